"""Milestone sequences, staircases, tails, and the hard-instance functions."""
