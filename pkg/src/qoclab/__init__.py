"""qoclab: coupler nonclassicality, spin quasiprobabilities, noisy channels,
and quantum-communication fidelities, each closed form paired with a
brute-force oracle."""

__version__ = "0.1.0"
