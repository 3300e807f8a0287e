"""Define helper tests."""
