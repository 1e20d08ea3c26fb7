"""Why a new community starts with simple majority.

Every rule that only looks at how many agents approve is enumerated for
small communities. Monotonicity, anonymity and concordance cut the list
down to the threshold rules; the minimality ordering then picks the
smallest threshold.
"""

from constitution import Mode, enumerate_consistent_rules, founding_rule

for n in (3, 4, 5, 8):
    report = enumerate_consistent_rules(n, Mode.COUNT_ONLY)
    kept = ", ".join(f"m={m}" for m in report.nondegenerate_thresholds)
    print(f"n={n}: {report.candidate_count:>4} count rules, consistent: {kept} (+ never-accept)")
    print(f"      founding rule: accept with {founding_rule(n).m} of {n} approvals")

# The same answer without assuming anonymity up front: all 2^(2^3) truth tables.
full = enumerate_consistent_rules(3, Mode.FULL_TABLE)
print(f"\nn=3 over all {full.candidate_count} truth tables: {len(full.survivors)} survivors, "
      f"all anonymous; winner m={full.winner.m}")
