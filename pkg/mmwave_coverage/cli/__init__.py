"""Command-line application: configuration, commands and reproduction recipes."""
