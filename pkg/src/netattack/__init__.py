"""Network attack planning and simulation engine."""
