import json

from mapwit.src.cli import main
from mapwit.src.graph import format_graph
from mapwit.src.test_utils import complete_graph, cycle_graph


def write_graph(tmp_path, name, graph):
    path = tmp_path / name
    path.write_text(format_graph(graph))
    return str(path)


def test_recognize_min_k(tmp_path, capsys):
    k3 = write_graph(tmp_path, 'k3.gr', complete_graph(3))
    assert main(['recognize', k3, '--min-k']) == 0
    assert capsys.readouterr().out.splitlines()[0] == 'YES k=2'


def test_recognize_no(tmp_path, capsys):
    k5 = write_graph(tmp_path, 'k5.gr', complete_graph(5))
    assert main(['recognize', k5, '--k', '3']) == 1
    assert capsys.readouterr().out.strip() == 'NO'


def test_certificate_verify_render(tmp_path, capsys):
    k4 = write_graph(tmp_path, 'k4.gr', complete_graph(4))
    certificate = str(tmp_path / 'c.json')
    assert main(['recognize', k4, '--k', '3', '--hole-free',
                 '--certificate', certificate, '--stats']) == 0
    out = capsys.readouterr().out
    assert out.startswith('YES k=3')
    assert 'width=3' in out

    assert main(['verify', k4, certificate, '--k', '3', '--hole-free']) == 0
    assert capsys.readouterr().out.strip() == 'VALID'
    assert main(['verify', k4, certificate, '--k', '2']) == 1
    assert capsys.readouterr().out.startswith('INVALID: ')

    square = write_graph(tmp_path, 'c4.gr', cycle_graph(4))
    assert main(['verify', square, certificate]) == 1
    assert 'INVALID' in capsys.readouterr().out

    drawing = str(tmp_path / 'w.svg')
    assert main(['render', certificate, '-o', drawing]) == 0
    assert (tmp_path / 'w.svg').read_text().count('<circle') == 4


def test_oracle(tmp_path, capsys):
    k3 = write_graph(tmp_path, 'k3.gr', complete_graph(3))
    assert main(['oracle', k3, '--k', '2']) == 0
    assert main(['oracle', k3, '--k', '2', '--hole-free']) == 1
    assert capsys.readouterr().out.split() == ['YES', 'NO']
    assert main(['recognize', k3, '--k', '2', '--oracle-check']) == 0


def test_errors(tmp_path, capsys):
    bad = tmp_path / 'bad.gr'
    bad.write_text("p tw 2 1\n1 3\n")
    assert main(['recognize', str(bad), '--k', '2']) == 2
    assert 'out of range' in capsys.readouterr().err
    assert main(['recognize', str(tmp_path / 'missing.gr'), '--map']) == 2

    k3 = write_graph(tmp_path, 'k3.gr', complete_graph(3))
    broken = tmp_path / 'broken.json'
    broken.write_text(json.dumps({'n': 3}))
    assert main(['verify', k3, str(broken)]) == 2
