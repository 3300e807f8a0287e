"""Define framed virtual link diagrams and operations on them."""
