class SimplexDesignsError(Exception):
    pass


class AssumptionError(SimplexDesignsError):
    pass


class ClassificationError(AssumptionError):
    pass


class ConfigError(SimplexDesignsError):
    pass


class GroundSetError(SimplexDesignsError):
    pass


class ParameterError(SimplexDesignsError):
    pass


class GeometryError(SimplexDesignsError):
    pass


class SpanError(GeometryError):
    pass


class CliqueError(SimplexDesignsError):
    pass


class DesignError(SimplexDesignsError):
    pass


class HadamardError(DesignError):
    pass


class GroupError(SimplexDesignsError):
    pass


class ParseError(SimplexDesignsError):
    pass
