import itertools

import pytest

from qmap.arch import (
    Architecture,
    CostModel,
    build_arch,
    parse_arch_file,
    parse_arch_shorthand,
)
from qmap.errors import ArchError


class TestBuildArch:
    def test_paper_scale_all_to_all(self):
        a = build_arch(8, 8, "alltoall", "alltoall")
        assert a.n_qubits == 64
        for c1, c2 in itertools.combinations(range(8), 2):
            assert a.core_distance(c1, c2) == 1
        # every same-core pair is coupled
        for p, q in itertools.combinations(range(8), 2):
            assert a.are_adjacent(p, q)

    def test_single_core_has_no_inter_links(self):
        a = build_arch(1, 4, "line", "alltoall")
        assert a.n_qubits == 4
        assert a.core_distance(0, 0) == 0

    def test_grid_cores_on_ring(self):
        a = build_arch(4, 4, "grid", "ring")
        # each core is a 2x2 grid: every slot has exactly 2 neighbours
        for p in range(4):
            assert len(a.intra_neighbors(p)) == 2
        assert a.core_distance(0, 2) == 2
        assert a.core_distance(0, 3) == 1

    def test_validation(self):
        with pytest.raises(ArchError):
            build_arch(0, 4, "line", "line")
        with pytest.raises(ArchError):
            build_arch(2, 0, "line", "line")
        with pytest.raises(ArchError, match="unknown topology"):
            build_arch(2, 2, "torus", "line")
        with pytest.raises(ArchError, match="ring"):
            build_arch(2, 2, "ring", "line")  # ring is inter-only

    def test_grid_dimensioning(self):
        a = build_arch(12, 2, "line", "grid")  # 12 cores -> 3x4
        # corner core 0 neighbours: 1 (right) and 4 (down)
        assert a.core_distance(0, 1) == 1
        assert a.core_distance(0, 4) == 1
        assert a.core_distance(0, 11) == 5
        b = build_arch(2, 9, "grid", "alltoall")  # 9 slots -> 3x3
        assert len(b.intra_neighbors(4)) == 4  # centre of the 3x3
        build_arch(3, 2, "grid", "line")  # 2 slots -> 1x2 is allowed
        build_arch(3, 3, "grid", "line")  # 3 slots -> 1x3 is allowed
        with pytest.raises(ArchError, match="prime"):
            build_arch(2, 5, "grid", "line")
        with pytest.raises(ArchError, match="prime"):
            build_arch(7, 2, "line", "grid")

    def test_aliases(self):
        a = build_arch(2, 2, "all-to-all", "2d-grid")
        assert a.intra == "alltoall"
        assert a.inter == "grid"


class TestQueries:
    def test_adjacency(self):
        a = build_arch(2, 4, "alltoall", "alltoall")
        assert a.are_adjacent(0, 3)
        assert not a.are_adjacent(0, 0)
        assert not a.are_adjacent(3, 4)  # different cores, despite inter link

    def test_line_gaps(self):
        a = build_arch(1, 4, "line", "alltoall")
        assert not a.are_adjacent(0, 2)
        assert a.intra_distance(0, 2) == 2
        assert a.intra_distance(0, 3) == 3
        assert a.intra_distance(1, 1) == 0

    def test_alltoall_distance_is_one(self):
        a = build_arch(1, 5, "alltoall", "alltoall")
        for p, q in itertools.permutations(range(5), 2):
            assert a.intra_distance(p, q) == 1

    def test_cross_core_intra_distance_rejected(self):
        a = build_arch(2, 2, "alltoall", "alltoall")
        with pytest.raises(ArchError, match="different cores"):
            a.intra_distance(0, 2)

    def test_ring_distances(self):
        a = build_arch(8, 2, "alltoall", "ring")
        assert a.core_distance(0, 4) == 4
        assert a.core_distance(0, 7) == 1
        assert a.core_distance(3, 3) == 0

    def test_index_validation(self):
        a = build_arch(2, 2, "alltoall", "alltoall")
        with pytest.raises(ArchError):
            a.are_adjacent(0, 4)
        with pytest.raises(ArchError):
            a.core_of(-1)
        with pytest.raises(ArchError):
            a.core_distance(0, 2)

    def test_core_ownership(self):
        a = build_arch(3, 4, "line", "line")
        for p in range(12):
            assert a.core_of(p) == p // 4
            assert a.slot_of(p) == p % 4

    @pytest.mark.parametrize("intra", ["alltoall", "line", "grid"])
    def test_metric_properties(self, intra):
        qpc = 4 if intra == "grid" else 5
        a = build_arch(2, qpc, intra, "alltoall")
        slots = list(range(qpc))
        for p, q in itertools.product(slots, repeat=2):
            assert a.intra_distance(p, q) == a.intra_distance(q, p)
            assert (a.intra_distance(p, q) == 0) == (p == q)
            assert a.are_adjacent(p, q) == (a.intra_distance(p, q) == 1)
            for r in slots:
                assert a.intra_distance(p, q) <= a.intra_distance(p, r) + a.intra_distance(r, q)


class TestShorthand:
    def test_parse(self):
        a = parse_arch_shorthand("8x8:alltoall/alltoall")
        assert (a.n_cores, a.qubits_per_core) == (8, 8)
        assert a.shorthand() == "8x8:alltoall/alltoall"

    def test_rejects_garbage(self):
        for bad in ("8x8", "8:line/line", "axb:line/line", "2x2:line"):
            with pytest.raises(ArchError):
                parse_arch_shorthand(bad)


class TestArchFile:
    def test_full_parse(self):
        text = """
        # test machine
        n_cores = 4
        qubits_per_core = 2   # trailing comment
        intra = line
        inter = ring
        name = testbox
        dur_teleport = 3
        readout_rate = 2e6
        """
        arch, cost = parse_arch_file(text)
        assert arch.n_cores == 4
        assert arch.name == "testbox"
        assert cost.dur_teleport == 3
        assert cost.readout_rate == 2e6
        assert cost.dur_swap == 1  # untouched default

    def test_errors(self):
        with pytest.raises(ArchError, match="missing required"):
            parse_arch_file("n_cores = 2\nintra = line\ninter = line\n")
        with pytest.raises(ArchError, match="unknown key"):
            parse_arch_file("n_cores=2\nqubits_per_core=2\nintra=line\ninter=line\nbogus=1\n")
        with pytest.raises(ArchError, match="bad value"):
            parse_arch_file("n_cores=x\nqubits_per_core=2\nintra=line\ninter=line\n")
        with pytest.raises(ArchError, match="duplicate key"):
            parse_arch_file("n_cores=2\nn_cores=3\nqubits_per_core=2\nintra=line\ninter=line\n")
        with pytest.raises(ArchError, match="key = value"):
            parse_arch_file("n_cores 2\n")


class TestCostModel:
    def test_defaults(self):
        c = CostModel()
        assert c.dur_teleport == 1
        assert c.swap_primitive_count == 3
        assert c.readout_rate == 1e6
        assert c.control_bits_per_gate == 1e3

    def test_validation(self):
        with pytest.raises(ValueError):
            CostModel(dur_2q=0)
        with pytest.raises(ValueError):
            CostModel(dur_teleport=-1)
        with pytest.raises(ValueError):
            CostModel(readout_rate=0)
        with pytest.raises(ValueError):
            CostModel(swap_primitive_count=0)
