"""All-pairs path systems, congestion accounting, and routing heuristics."""
