#!/usr/bin/env python3
"""The pattern language: parse, expand lexicon macros, match, verify.

Patterns name a head node and a conjunction of labeled relations.
Captures (=name) record which token each node bound.
"""

from causalex import (
    brute_force_matches,
    builtin_lexicons,
    expand_lexicons,
    find_matches,
    parse_pattern,
    pretty_print,
)

CONLLU_GRAPH = """\
# sent_id = demo:0
# text = Stress causes insomnia .
1\tStress\tstress\tNOUN\tNN\t_\t2\tnsubj\t_\t_
2\tcauses\tcause\tVERB\tVBZ\t_\t0\troot\t_\t_
3\tinsomnia\tinsomnia\tNOUN\tNN\t_\t2\tdobj\t_\t_
4\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_
"""

from causalex import parse_conllu

graph = parse_conllu(CONLLU_GRAPH)[0]

# $CLAUSAL_VERB refers to a named word list; expansion turns it into an
# alternation, after which the pattern is ready to match.
source = "{lemma:/$CLAUSAL_VERB/;pos:/VB.*/}=trigger >/nsubj/ {}=cause >/dobj|obj/ {}=effect"
ast = parse_pattern(source)
expanded = expand_lexicons(ast, builtin_lexicons())
print("canonical form:")
print(" ", pretty_print(expanded))

for match in find_matches(graph, expanded):
    shown = {name: graph.token(i).form for name, i in match.bindings.items()}
    print("match:", shown)

# The brute-force oracle tries every token assignment and must agree.
assert find_matches(graph, expanded) == brute_force_matches(graph, expanded)
print("oracle agrees")

# pretty_print round-trips: parse(pretty_print(ast)) == ast.
assert parse_pattern(pretty_print(expanded)) == expanded

# Unconstrained nodes match every token; "<" walks toward the governor.
print("token count via {}=x:", len(find_matches(graph, parse_pattern("{}=x"))))
upward = find_matches(graph, parse_pattern("{}=dep <nsubj {}=head"))
print("upward match:", [{k: graph.token(v).form for k, v in m.bindings.items()} for m in upward])
