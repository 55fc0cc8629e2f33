import json
import sys

import pywbe


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)
    print("ok:", msg)


# combinatorics
check(pywbe.syt_count("8,6,2,2") == "2148120", "syt_count big shape")
check(pywbe.syt_count("2,1") == "2", "syt_count (2,1)")
tabs = pywbe.enumerate_syt("2,1")
check(tabs == ["1,2;3", "1,3;2"], "tableau enumeration order")
check(pywbe.hook_length("2,1", 1, 1) == 3, "hook length")
check(pywbe.node_degree("8,6,2,2", 1, 0) == 10, "node degree")
check(pywbe.dimension("2|1") == "3", "weight dimension")
check(pywbe.hilbert_rank_twistless("2,1") == "2", "hilbert rank twistless")
check(pywbe.hilbert_rank_twisted("2,1,0") == "3", "hilbert rank twisted")

# twist-less solve on the exact fixture
res = pywbe.solve_twistless("2,1", ["0", "1", "2"], hbar="1", digits=64)
check(sorted(res["labels"]) == ["1,2;3", "1,3;2"], "two tableau labels")
check(all(r < 1e-40 for r in res["residuals"]), "residuals certified")
arch = json.loads(res["archive"])
check(arch["schema_id"] == "wbe/1", "archive schema id")
check(len(arch["records"]) == 2, "two records in the archive")

# node roots across both solutions are {1/2, 3/2}
roots = pywbe.node_roots(res["archive"], 0, 1)
vals = sorted(r[0][0] for r in roots)
check(abs(vals[0] - 0.5) < 1e-12 and abs(vals[1] - 1.5) < 1e-12, "node roots 1/2, 3/2")

# twisted solve: three solutions
tw = pywbe.solve_twisted("2|1", ["3"], ["1"], ["0.3", "1.4", "2.8"], hbar="1", digits=64)
check(len(tw["labels"]) == 3, "three twisted records")
check(all(r < 1e-40 for r in tw["residuals"]), "twisted residuals certified")

# oracle agreement
ok, mism = pywbe.verify_oracle_twistless("2,1", ["0", "1", "2"], hbar="1", digits=50)
check(ok and mism < 1e-25, "oracle spectrum matches")

print("smoke tests passed")
