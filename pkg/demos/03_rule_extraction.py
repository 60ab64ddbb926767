#!/usr/bin/env python3
"""Causal triples: the built-in rule set over a few parsed sentences.

Each rule pairs a trigger-word lexicon with a syntactic configuration;
a match becomes a <cause, relation, effect> triple when the effect token
(or a conjunct reachable from it) is one of the target keywords.
"""

from causalex import apply_rules, builtin_ruleset, dedup_triples, parse_conllu

PARSES = """\
# sent_id = a:0
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

# sent_id = b:0
# text = Insomnia results from stress
1\tInsomnia\tinsomnia\tNOUN\tNN\t_\t2\tnsubj\t_\t_
2\tresults\tresult\tVERB\tVBZ\t_\t0\troot\t_\t_
3\tfrom\tfrom\tADP\tIN\t_\t4\tcase\t_\t_
4\tstress\tstress\tNOUN\tNN\t_\t2\tnmod\t2:nmod:from\t_

# sent_id = c:0
# text = Missing someone causes insomnia.
1\tMissing\tmiss\tVERB\tVBG\t_\t2\tamod\t_\t_
2\tsomeone\tsomeone\tNOUN\tNN\t_\t3\tnsubj\t_\t_
3\tcauses\tcause\tVERB\tVBZ\t_\t0\troot\t_\t_
4\tinsomnia\tinsomnia\tNOUN\tNN\t_\t3\tdobj\t_\t_
5\t.\t.\tPUNCT\t.\t_\t3\tpunct\t_\t_

# sent_id = d:0
# text = missing someone causes insomnia
1\tmissing\tmiss\tVERB\tVBG\t_\t2\tamod\t_\t_
2\tsomeone\tsomeone\tNOUN\tNN\t_\t3\tnsubj\t_\t_
3\tcauses\tcause\tVERB\tVBZ\t_\t0\troot\t_\t_
4\tinsomnia\tinsomnia\tNOUN\tNN\t_\t3\tdobj\t_\t_
"""

rules = builtin_ruleset()
print("rules:", [(r.id, r.name) for r in rules])

targets = {"insomnia", "stress", "headache"}
triples = []
for graph in parse_conllu(PARSES):
    for triple in apply_rules(graph, rules, targets):
        triples.append(triple)
        print(
            f"{graph.sentence_id}: rule {triple.rule_id} "
            f"[{triple.cause}] --{triple.trigger_lemma}--> [{triple.effect}]"
        )

# Sentence a: the bound effect "headaches" is already a target; the cause
# span projects the subject subtree ("too many tears").
# Sentence b: "results from" inverts, so stress is the cause.
# Sentences c and d repeat the same relation with different casing; dedup
# collapses them and reports the multiplicity.
survivors, counts = dedup_triples(triples)
print(f"\n{len(triples)} raw -> {len(survivors)} deduped")
for key, count in counts.items():
    if count > 1:
        print("repeated:", key, "x", count)
