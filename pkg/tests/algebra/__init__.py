"""Define algebra tests."""
