"""Define util tests."""
