"""CSV, JSON and SVG emitters."""
