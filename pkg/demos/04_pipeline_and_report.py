#!/usr/bin/env python3
"""Batch extraction: keyword prefilter, per-target rule runs, reports.

Builds a small corpus on disk, runs the pipeline, and prints the
rule-frequency table and its TSV twin.
"""

import pathlib
import tempfile

from causalex import PipelineConfig, extract, report_rule_frequency, report_rule_frequency_tsv

TWEETS = """\
{"id": "t1", "text": "Stress causes insomnia"}
{"id": "t2", "text": "School is the main cause of my stress"}
{"id": "t3", "text": "an insomniac life"}
{"id": "t4", "text": "too many tears leads to headaches and heavy hearts"}
"""

PARSES = """\
# sent_id = t1:0
# text = Stress causes insomnia
1\tStress\tstress\tNOUN\tNN\t_\t2\tnsubj\t_\t_
2\tcauses\tcause\tVERB\tVBZ\t_\t0\troot\t_\t_
3\tinsomnia\tinsomnia\tNOUN\tNN\t_\t2\tdobj\t_\t_

# sent_id = t2:0
# text = School is the main cause of my stress
1\tSchool\tschool\tPROPN\tNNP\t_\t5\tnsubj\t_\t_
2\tis\tbe\tAUX\tVBZ\t_\t5\tcop\t_\t_
3\tthe\tthe\tDET\tDT\t_\t5\tdet\t_\t_
4\tmain\tmain\tADJ\tJJ\t_\t5\tamod\t_\t_
5\tcause\tcause\tNOUN\tNN\t_\t0\troot\t_\t_
6\tof\tof\tADP\tIN\t_\t8\tcase\t_\t_
7\tmy\tmy\tPRON\tPRP$\t_\t8\tnmod:poss\t_\t_
8\tstress\tstress\tNOUN\tNN\t_\t5\tnmod\t5:nmod:of\t_

# sent_id = t4:0
# text = too many tears leads to headaches and heavy hearts
1\ttoo\ttoo\tADV\tRB\t_\t2\tadvmod\t_\t_
2\tmany\tmany\tADJ\tJJ\t_\t3\tamod\t_\t_
3\ttears\ttear\tNOUN\tNNS\t_\t4\tnsubj\t_\t_
4\tleads\tlead\tVERB\tVBZ\t_\t0\troot\t_\t_
5\tto\tto\tADP\tIN\t_\t6\tcase\t_\t_
6\theadaches\theadache\tNOUN\tNNS\t_\t4\tnmod\t4:nmod:to\t_
7\tand\tand\tCCONJ\tCC\t_\t6\tcc\t_\t_
8\theavy\theavy\tADJ\tJJ\t_\t9\tamod\t_\t_
9\thearts\theart\tNOUN\tNNS\t_\t6\tconj\t6:conj:and\t_
"""

with tempfile.TemporaryDirectory() as tmp:
    base = pathlib.Path(tmp)
    (base / "tweets.jsonl").write_text(TWEETS)
    (base / "parses.conllu").write_text(PARSES)

    config = PipelineConfig(
        targets=["insomnia", "stress", "headache"],
        tweets_path=str(base / "tweets.jsonl"),
        parses_path=str(base / "parses.conllu"),
    )
    result = extract(config)

    # t3 never enters: "insomniac" fails the word-boundary keyword filter.
    # t1 mentions both insomnia and stress but only yields an insomnia
    # triple (the effect binding decides, not the keyword filter).
    for target, tr in result.per_target.items():
        print(f"{target}: {tr.tweets_matched} tweet(s) matched, {tr.raw_triple_count} triple(s)")
        for triple in tr.triples:
            print(f"    [{triple.cause}] -> [{triple.effect}]  (rule {triple.rule_id}, {triple.tweet_id})")

    print()
    print(report_rule_frequency(result))
    print(report_rule_frequency_tsv(result))
