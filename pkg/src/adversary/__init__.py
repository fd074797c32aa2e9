"""Weight scheme, adversary quantities, and proof-chain verification."""
