"""qorbit: exact and numeric workbench for quantum Heisenberg algebras,
quantum moment maps, and *-representations of U_q(su(1,1)) and U_q(su(2,1))."""

__version__ = "0.1.0"
