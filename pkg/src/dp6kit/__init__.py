"""dp6kit: exact computations around degree-6 del Pezzo surfaces.

Brauer classes over Q as local invariant vectors, the hexagon Picard lattice
with its S2 x S3 action, rank-9 algebras with unitary involution, explicit
surface models over small finite fields, and certified replays of the two
splitting-dimension arguments they support.
"""

__version__ = "0.1.0"
