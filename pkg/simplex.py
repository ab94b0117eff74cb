#!/usr/bin/env python

from simplexdesigns.cli import cli

if __name__ == "__main__":
    cli()
