import pathlib

import pytest

from causalex.depgraph import read_conllu_file

DATA_DIR = pathlib.Path(__file__).parent / "data"

GOLD_SIMPLE = """\
# sent_id = g1:0
# text = Stress causes insomnia .
1\tStress\tstress\tNOUN\tNN\t_\t2\tnsubj\t_\t_
2\tcauses\tcause\tVERB\tVBZ\t_\t0\troot\t_\t_
3\tinsomnia\tinsomnia\tNOUN\tNN\t_\t2\tdobj\t_\t_
4\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_
"""


@pytest.fixture(scope="session")
def mini_corpus_graphs():
    return read_conllu_file(str(DATA_DIR / "mini_corpus.conllu"))


@pytest.fixture(scope="session")
def mini_corpus_by_id(mini_corpus_graphs):
    return {g.sentence_id: g for g in mini_corpus_graphs}


@pytest.fixture(scope="session")
def extra_graphs():
    return {g.sentence_id: g for g in read_conllu_file(str(DATA_DIR / "extra_fixtures.conllu"))}
