"""Why is Carlo not returned, and what would change that?

Run: python3 demos/university.py
"""

from pathlib import Path

from qabduct import (
    Individual, QAP, assertion, certain_answers, enumerate_minimal, is_necessary, is_relevant, parse_abox,
    parse_query, parse_tbox, recognize, role,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

abox = parse_abox((DATA / "university.abox").read_text())
query = parse_query((DATA / "university.query").read_text())
tbox = parse_tbox((DATA / "university.tbox").read_text(), {"enroll", "teach"})

print("Query:", query.disjuncts[0])
print("Certain answers:", sorted(t[0].name for t in certain_answers(query, tbox, abox)))

# Only enrolments and teaching duties may be added to the data.
p = QAP(tbox, abox, query, (Individual("Carlo"),), {role("enroll"), role("teach")})

print("\nSmallest fixes (fewest new facts):")
for e in enumerate_minimal(p, "card"):
    print("  ", e)

print("\nIrredundant fixes:")
for e in enumerate_minimal(p, "subset"):
    print("  ", e)

redundant = parse_abox("teach(Carlo,_:c)\nenroll(Beppe,_:c)\nenroll(Luca,_:c)\n", allow_anonymous=True)
print("\nA fix with a spare fact works:", recognize(p, redundant, "none"))
print("...but it is not irredundant:", recognize(p, redundant, "subset"))

beppe = assertion("enroll", "Beppe", "IDB")
print(f"\n{beppe} appears in some smallest fix:", is_relevant(p, beppe, "card"))
print(f"{beppe} is unavoidable:", is_necessary(p, beppe, "none"))
