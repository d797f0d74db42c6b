"""File formats: JSON schemas, CSV/JSON readers and writers, run manifests."""
