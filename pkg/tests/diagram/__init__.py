"""Define diagram tests."""
