"""Formula transcriptions, one module per family."""
