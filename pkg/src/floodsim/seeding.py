"""
Deterministic 64-bit seed derivation.

``splitmix64(x)`` is one step of Vigna's SplitMix64 generator started from
state ``x``: add the golden-ratio increment, then apply the avalanche
finalizer. A replicate's seed is

    derive_seed(base, kappa, rep)
        = splitmix64(splitmix64(splitmix64(base) ^ kappa) ^ rep)

with all arithmetic modulo 2**64. Test vectors::

    splitmix64(1234567)      == 6457827717110365317
    derive_seed(0, 0, 0)     == 2558736989570252433
    derive_seed(12345, 1000, 0) == 17582110320356309836
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
DEFAULT_SEED = 12345
# replicate slot reserved for the per-kappa degree spec stream
SPEC_STREAM = MASK64


def splitmix64(x: int) -> int:
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, kappa: int, replicate: int) -> int:
    h = splitmix64(base_seed & MASK64)
    h = splitmix64(h ^ (kappa & MASK64))
    return splitmix64(h ^ (replicate & MASK64))
