"""Define the vwrt package."""
