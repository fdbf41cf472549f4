"""Random census of plane quartics over GF(5): sample, discard singular
draws, and histogram the strata. Deterministic for a fixed seed."""

import io

from eotypes.cli import run_scan

buf = io.StringIO()
stats = run_scan(p=5, d=4, count=300, seed=11, out=buf)
print(buf.getvalue())
print(f"smooth: {sum(stats['hist'].values())}, singular: {stats['singular']}")
