"""Query-counting oracles and classical local-search baselines."""
