"""Graph representation, deterministic families, distances, and expansion."""
