"""The unbounded-capacity marker.

Capacity is unbounded when a cluster sees neither noise nor out-of-cluster
interference (e.g. a single cluster covering the whole network with
``n0_over_p = 0``). Such results are returned as ``UNBOUNDED`` instead of a
float infinity so they cannot silently enter sums or means: any arithmetic
on the marker raises ``TypeError``.
"""


class _Unbounded:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


def is_unbounded(value) -> bool:
    return value is UNBOUNDED
