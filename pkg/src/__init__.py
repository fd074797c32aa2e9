"""Top-level package for staircase hard instances and adversary-bound verification."""
