"""Automorphism group order of the linear (n, 8^(n-2), 3)_8 code."""

import sys
import time

from mdsclass.canon import canonicalize
from mdsclass.linear import linear_mds

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6
t0 = time.perf_counter()
res = canonicalize(linear_mds(8, n))
print(f"n={n} aut_order={res.aut_order} leaves={res.leaves} seconds={time.perf_counter() - t0:.1f}")
