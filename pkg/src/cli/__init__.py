"""Command-line front end and subcommand implementations."""
