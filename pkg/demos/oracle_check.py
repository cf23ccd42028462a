"""Compare the engine with exhaustive search on random problems.

Run: python3 demos/oracle_check.py [count]
"""

import sys

from qabduct import enumerate_minimal
from qabduct.canon import abox_key
from qabduct.testkit import brute_force_explanations, random_qap

count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
agree = 0
for seed in range(count):
    p = random_qap(seed)
    engine = {abox_key(e.assertions) for e in enumerate_minimal(p, "subset")}
    oracle = {abox_key(e) for e in brute_force_explanations(p, minimal_only=True)}
    agree += engine == oracle
    if engine != oracle:
        print(f"seed {seed}: engine {len(engine)} vs oracle {len(oracle)}")
print(f"{agree}/{count} problems agree on the irredundant explanations")
