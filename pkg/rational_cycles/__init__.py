"""3x+1 dynamics on rationals with a fixed odd denominator."""
