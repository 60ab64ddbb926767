#!/usr/bin/env python3
"""Reading CoNLL-U and querying the dependency graph.

A sentence is a set of tokens plus two labeled edge sets: the basic
edges form a tree; the enhanced edges may give a token several governors
and are what pattern queries walk.
"""

from causalex import dependents, governors, parse_conllu, to_conllu

CONLLU = """\
# sent_id = demo:0
# text = My insomnia was caused by stress.
1\tMy\tmy\tPRON\tPRP$\t_\t2\tnmod:poss\t_\t_
2\tinsomnia\tinsomnia\tNOUN\tNN\t_\t4\tnsubjpass\t_\t_
3\twas\tbe\tAUX\tVBD\t_\t4\tauxpass\t_\t_
4\tcaused\tcause\tVERB\tVBN\t_\t0\troot\t_\t_
5\tby\tby\tADP\tIN\t_\t6\tcase\t_\t_
6\tstress\tstress\tNOUN\tNN\t_\t4\tnmod\t4:nmod:agent\t_
7\t.\t.\tPUNCT\t.\t_\t4\tpunct\t_\t_
"""

graph = parse_conllu(CONLLU)[0]
print(f"{graph.sentence_id}: {graph.text}")
print("tokens:", [f"{t.index}:{t.form}/{t.xpos}" for t in graph.tokens])

# Children of the main verb. Note the enhanced label nmod:agent, which
# the basic column only records as plain nmod.
print("\ndependents of 'caused':")
for edge, token in dependents(graph, 4):
    print(f"  {edge.label:12s} -> {token.form}")

# Anchored label regexes: "nsubj" does not match "nsubjpass".
print("\nnsubj children:", dependents(graph, 4, "nsubj"))
print("nsubjpass children:", [t.form for _, t in dependents(graph, 4, "nsubjpass")])

# Upward queries mirror downward ones; the root shows as ROOT.
print("\ngovernors of 'stress':", [(e.label, g.form) for e, g in governors(graph, 6)])
print("governors of 'caused':", [(e.label, str(g)) for e, g in governors(graph, 4)])

# Serialization is lossless: parse -> write -> parse gives equal graphs.
assert parse_conllu(to_conllu([graph])) == [graph]
print("\nround-trip OK")
