import json
import random

import pytest

from cfl import quiver as qv
from cfl.quiver import DynkinType, ExchangeMatrix, from_dynkin, mutate_matrix, recognize_dynkin

ALL_CONNECTED = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
    "B2", "B3", "B4", "B5", "B6", "B7", "B8",
    "C3", "C4", "C5", "C6", "C7", "C8",
    "D4", "D5", "D6", "D7", "D8",
    "E6", "E7", "E8", "F4", "G2",
]


def test_parse_and_normalize():
    assert DynkinType.parse("a2") == DynkinType([("A", 2)])
    assert DynkinType.parse("C2") == DynkinType.parse("B2")
    assert DynkinType.parse("B1") == DynkinType.parse("A1")
    assert DynkinType.parse("D3") == DynkinType.parse("A3")
    assert DynkinType.parse("D2") == DynkinType.parse("A1xA1")
    assert str(DynkinType.parse("G2xA1")) == "A1xG2"
    assert DynkinType.parse("A1xA1").rank == 2
    assert DynkinType.empty().rank == 0


def test_parse_rejects_bad_names():
    for bad in ("E5", "E9", "F3", "G3", "H2", "A0", "Q5", "A"):
        with pytest.raises(ValueError):
            DynkinType.parse(bad)


def test_from_dynkin_g2():
    m = from_dynkin(DynkinType.parse("G2"))
    arrows = list(m.arrows())
    assert len(arrows) == 1 and arrows[0].values == (1, 3)


def test_from_dynkin_a1xa1_zero_matrix():
    m = from_dynkin(DynkinType.parse("A1xA1"))
    assert m.entries == ((0, 0), (0, 0))


def test_from_dynkin_b4_matches_valued_quiver():
    m = from_dynkin(DynkinType.parse("B4"))
    arrows = {(a.source, a.target): a.values for a in m.arrows()}
    assert arrows == {(0, 1): (1, 1), (2, 1): (1, 1), (2, 3): (1, 2)}


def test_orientation_override():
    m = from_dynkin(DynkinType.parse("A3"), orientation=[(1, 2), (2, 3)])
    arrows = {(a.source, a.target) for a in m.arrows()}
    assert arrows == {(0, 1), (1, 2)}
    with pytest.raises(ValueError):
        from_dynkin(DynkinType.parse("A3"), orientation=[(1, 3)])


def test_skew_symmetrizer_found():
    m = from_dynkin(DynkinType.parse("B3"))
    d = m.skew_symmetrizer
    for i in range(3):
        for j in range(3):
            assert d[i] * m[i, j] == -d[j] * m[j, i]


def test_not_skew_symmetrizable_rejected():
    with pytest.raises(ValueError):
        ExchangeMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        ExchangeMatrix([[0, 1], [0, 0]])


def test_mutation_involution_everywhere():
    for spec in ("A3", "B3", "C3", "D4", "F4", "G2"):
        m = from_dynkin(DynkinType.parse(spec))
        for k in range(m.rank):
            assert mutate_matrix(mutate_matrix(m, k), k) == m


def test_rank2_mutation_reverses_arrow():
    m = ExchangeMatrix([[0, 1], [-3, 0]])
    for k in (0, 1):
        out = mutate_matrix(m, k)
        assert out.entries == ((0, -1), (3, 0))


def test_mutation_preserves_symmetrizability():
    rng = random.Random(17)
    for spec in ("B3", "F4", "G2", "D4"):
        m = from_dynkin(DynkinType.parse(spec))
        d = m.skew_symmetrizer
        for _ in range(20):
            m = mutate_matrix(m, rng.randrange(m.rank))
            for i in range(m.rank):
                for j in range(m.rank):
                    assert d[i] * m[i, j] == -d[j] * m[j, i]


def test_recognize_roundtrip_all_connected():
    for spec in ALL_CONNECTED:
        t = DynkinType.parse(spec)
        assert recognize_dynkin(from_dynkin(t)) == t


def test_recognize_products():
    for spec in ("A1xA1", "A2xG2", "B3xA1", "D4xA2"):
        t = DynkinType.parse(spec)
        assert recognize_dynkin(from_dynkin(t)) == t


def test_recognize_ignores_orientation():
    m = from_dynkin(DynkinType.parse("A3"), orientation=[(1, 2), (2, 3)])
    assert recognize_dynkin(m) == DynkinType.parse("A3")
    f4_reversed = from_dynkin(DynkinType.parse("F4"), orientation=[(2, 1), (3, 2), (4, 3)])
    assert recognize_dynkin(f4_reversed) == DynkinType.parse("F4")


def test_recognize_rejects_non_dynkin():
    assert recognize_dynkin(ExchangeMatrix([[0, 2], [-2, 0]])) is None
    assert recognize_dynkin(ExchangeMatrix([[0, 1], [-4, 0]])) is None
    cyclic = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert recognize_dynkin(cyclic) is None


def test_recognize_single_vertex():
    assert recognize_dynkin(ExchangeMatrix([[0]])) == DynkinType.parse("A1")


def test_recognize_b_vs_c():
    b3 = from_dynkin(DynkinType.parse("B3"))
    c3 = from_dynkin(DynkinType.parse("C3"))
    assert recognize_dynkin(b3) == DynkinType.parse("B3")
    assert recognize_dynkin(c3) == DynkinType.parse("C3")
    assert recognize_dynkin(b3) != recognize_dynkin(c3)


def test_cyclic_triangle_mutates_to_a3():
    cyclic = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert recognize_dynkin(mutate_matrix(cyclic, 0)) == DynkinType.parse("A3")


def test_json_roundtrip(tmp_path):
    m = from_dynkin(DynkinType.parse("B4"))
    data = qv.to_json_dict(m)
    assert data["rank"] == 4
    assert {"from": 3, "to": 4, "b": 1, "c": 2} in data["arrows"]
    again = qv.from_json_dict(json.loads(json.dumps(data)))
    assert again == m
    path = tmp_path / "quiver.json"
    path.write_text(json.dumps(data))
    assert qv.load_quiver(str(path)) == m


def test_json_rejects_bad_arrows():
    with pytest.raises(ValueError):
        qv.from_json_dict({"rank": 2, "arrows": [{"from": 1, "to": 1, "b": 1, "c": 1}]})
    with pytest.raises(ValueError):
        qv.from_json_dict({"rank": 2, "arrows": [{"from": 1, "to": 2, "b": 0, "c": 1}]})


def test_submatrix_and_permuted():
    m = from_dynkin(DynkinType.parse("B4"))
    sub = m.submatrix([0, 1, 2])
    assert recognize_dynkin(sub) == DynkinType.parse("A3")
    perm = m.permuted([3, 2, 1, 0])
    assert recognize_dynkin(perm) == DynkinType.parse("B4")


def test_acyclicity():
    cyclic = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert not cyclic.is_acyclic()
    assert from_dynkin(DynkinType.parse("D5")).is_acyclic()
    with pytest.raises(ValueError):
        cyclic.topological_order()


def test_topological_order():
    m = from_dynkin(DynkinType.parse("B4"))
    order = m.topological_order()
    pos = {v: i for i, v in enumerate(order)}
    for a in m.arrows():
        assert pos[a.source] < pos[a.target]
