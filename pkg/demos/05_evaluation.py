#!/usr/bin/env python3
"""Scoring extractions against human annotations.

Annotators mark each extracted triple correct/incorrect plus whether the
statement was hypothetical or negated.  Strict scoring rejects flagged
items; relaxed scoring accepts any correct extraction, so relaxed
accuracy is never below strict.
"""

from causalex import accuracy, format_report, load_annotations

ANNOTATIONS = """\
tweet_id\tsent\trule\teffect\tcorrect\thypothetical\tnegated
t1\t0\t1\tinsomnia\t1\t0\t0
t2\t0\t1\tinsomnia\t1\t1\t0
t3\t0\t6\tinsomnia\t1\t0\t1
t4\t0\t4\tinsomnia\t0\t0\t0
t5\t0\t1\tstress\t1\t0\t0
t6\t0\t1\tstress\t1\t0\t0
t7\t0\t6\tstress\t0\t0\t0
t8\t0\t1\theadache\t1\t1\t0
t9\t0\t4\theadache\t0\t0\t0
"""

records = load_annotations(ANNOTATIONS)
extracted = list(records)  # pretend the system produced exactly these

strict = accuracy(extracted, records, "strict")
relaxed = accuracy(extracted, records, "relaxed")
print(format_report([strict, relaxed]))

# "t2" (hypothetical) and "t3"/"t8" (flagged) count only under relaxed.
for category, score in strict.per_category.items():
    relaxed_score = relaxed.per_category[category]
    assert relaxed_score.accuracy >= score.accuracy
print("relaxed >= strict in every category")
print(f"micro: strict {strict.micro_tp}/{strict.micro_total}, relaxed {relaxed.micro_tp}/{relaxed.micro_total}")
