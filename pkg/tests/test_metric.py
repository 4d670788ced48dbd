"""Tests for metric spaces, their validation and the operations on them"""

from fractions import Fraction

import pytest
from inline_snapshot import snapshot


class TestValidate:
    """Test suite for metric axiom checks"""

    def test_should_accept_two_point_space(self):
        """Test that the smallest nondegenerate metric validates"""
        # When: User validates two points at distance 1
        from ghmetric import validate

        space = validate(["a", "b"], [[0, 1], [1, 0]])

        # Then: The space should keep labels and exact distances
        assert space.labels == ("a", "b")
        assert space.dist == ((0, 1), (1, 0))
        assert space.size == 2

    def test_should_reject_asymmetric_matrix(self):
        """Test that symmetry is enforced with the offending pair"""
        from ghmetric import validate
        from ghmetric.errors import AsymmetricMatrixError

        # When: User validates a matrix with dist[0][1] != dist[1][0]
        # Then: Should raise AsymmetricMatrixError for (0, 1)
        with pytest.raises(AsymmetricMatrixError) as exc_info:
            validate(["a", "b"], [[0, 1], [2, 0]])
        assert (exc_info.value.i, exc_info.value.j) == (0, 1)

    def test_should_report_triangle_violation_triple(self):
        """Test that a triangle violation names the triple"""
        from ghmetric import TriangleViolationError, validate

        # Given: 3 > 1 + 1 between points 0 and 2 through 1
        dist = [[0, 1, 3], [1, 0, 1], [3, 1, 0]]

        # When: User validates the matrix
        # Then: Should raise TriangleViolationError(0, 1, 2)
        with pytest.raises(TriangleViolationError) as exc_info:
            validate(["a", "b", "c"], dist)
        assert exc_info.value.details() == {"i": 0, "j": 1, "k": 2}

    def test_should_reject_zero_distance_between_distinct_points(self):
        from ghmetric import validate
        from ghmetric.errors import ZeroOffDiagonalError

        with pytest.raises(ZeroOffDiagonalError):
            validate(["a", "b"], [[0, 0], [0, 0]])

    def test_should_reject_nonzero_diagonal(self):
        from ghmetric import validate
        from ghmetric.errors import NonzeroDiagonalError

        with pytest.raises(NonzeroDiagonalError, match=r"dist\[1\]\[1\]"):
            validate(["a", "b"], [[0, 1], [1, 2]])

    def test_should_reject_negative_distance(self):
        from ghmetric import validate
        from ghmetric.errors import NegativeDistanceError

        with pytest.raises(NegativeDistanceError):
            validate(["a", "b"], [[0, -1], [-1, 0]])

    def test_should_reject_empty_space(self):
        from ghmetric import validate
        from ghmetric.errors import EmptySpaceError

        with pytest.raises(EmptySpaceError):
            validate([], [])

    def test_should_reject_shape_mismatch(self):
        from ghmetric import validate
        from ghmetric.errors import ShapeMismatchError

        with pytest.raises(ShapeMismatchError):
            validate(["a", "b"], [[0, 1]])

    def test_should_reject_duplicate_labels(self):
        from ghmetric import validate
        from ghmetric.errors import DuplicateLabelError

        with pytest.raises(DuplicateLabelError, match="'a'"):
            validate(["a", "a"], [[0, 1], [1, 0]])

    def test_should_parse_exact_rationals(self):
        """Test that decimal and rational literals become exact fractions"""
        from ghmetric import validate

        # When: Distances are given as a rational string, a decimal string and a float
        space = validate(["a", "b", "c"], [[0, "1/3", "0.1"], ["1/3", 0, 0.3], [0.1, "0.3", 0]])

        # Then: Every entry should be the exact rational
        assert space.dist[0][1] == Fraction(1, 3)
        assert space.dist[0][2] == Fraction(1, 10)
        assert space.dist[1][2] == Fraction(3, 10)

    def test_should_wrap_unparseable_entries_in_validation_error(self):
        """Test that pydantic errors surface as the package ValidationError"""
        from ghmetric import ValidationError, validate

        # When: An entry is a boolean
        # Then: Should raise ValidationError naming the field
        with pytest.raises(ValidationError, match="dist") as exc_info:
            validate(["a", "b"], [[0, True], [True, 0]])
        assert exc_info.value.original_error is not None

    def test_should_reject_infinite_distance(self):
        from ghmetric import ValidationError, validate

        with pytest.raises(ValidationError, match="finite"):
            validate(["a", "b"], [[0, float("inf")], [float("inf"), 0]])

    def test_should_accept_exactly_the_metric_matrices(self):
        """Test validate against a direct check of the axioms on random symmetric matrices"""
        import random
        from itertools import combinations, product

        from ghmetric import ValidationError, validate

        def is_metric(d):
            n = len(d)
            if any(d[i][j] == 0 for i in range(n) for j in range(n) if i != j):
                return False
            return all(d[i][k] <= d[i][j] + d[j][k] for i, j, k in product(range(n), repeat=3))

        rng = random.Random(3)
        accepted = 0
        for _ in range(300):
            # Given: A symmetric matrix with entries in {0, 1/2, ..., 2} off the diagonal
            n = rng.randint(2, 4)
            dist = [[Fraction(0)] * n for _ in range(n)]
            for i, j in combinations(range(n), 2):
                dist[i][j] = dist[j][i] = Fraction(rng.randint(0, 4), 2)

            # When: User validates it
            try:
                validate([str(i) for i in range(n)], dist)
                valid = True
            except ValidationError:
                valid = False

            # Then: It passes exactly when the direct check does
            assert valid == is_metric(dist)
            accepted += valid
        assert 0 < accepted < 300


class TestSemimetric:
    """Test suite for semimetric validation and quotients"""

    def test_should_allow_all_zero_semimetric(self):
        from ghmetric import validate_semimetric

        space = validate_semimetric(["a", "b"], [[0, 0], [0, 0]])

        assert space.dist == ((0, 0), (0, 0))

    def test_should_still_check_triangle_inequality(self):
        from ghmetric import TriangleViolationError, validate_semimetric

        with pytest.raises(TriangleViolationError):
            validate_semimetric(["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]])

    def test_should_merge_zero_pair_into_one_point(self):
        """Test that two points at distance zero collapse"""
        from ghmetric import quotient_zero, validate_semimetric

        # Given: Two points at distance 0
        space = validate_semimetric(["a", "b"], [[0, 0], [0, 0]])

        # When: User takes the quotient
        quotient = quotient_zero(space)

        # Then: Both points should map to the single class
        assert quotient.space.labels == ("a",)
        assert quotient.projection == (0, 0)

    def test_should_keep_metric_space_unchanged(self, line4):
        from ghmetric import quotient_zero

        quotient = quotient_zero(line4)

        assert quotient.space == line4
        assert quotient.projection == (0, 1, 2, 3)

    def test_should_merge_class_and_keep_distances(self):
        """Test the quotient of d(a,b)=0, d(a,c)=d(b,c)=1"""
        from ghmetric import quotient_zero, validate_semimetric

        # Given: a and b at distance zero, both at distance 1 from c
        space = validate_semimetric(["a", "b", "c"], [[0, 0, 1], [0, 0, 1], [1, 1, 0]])

        # When: User takes the quotient
        quotient = quotient_zero(space)

        # Then: Two points at distance 1 remain, labeled by the lowest class member
        assert quotient.space.labels == ("a", "c")
        assert quotient.space.dist == ((0, 1), (1, 0))
        assert quotient.projection == (0, 0, 1)


class TestDisjointUnion:
    """Test suite for semimetrics on disjoint unions"""

    def test_should_glue_two_points_at_distance_zero(self, point):
        from ghmetric import disjoint_union

        union = disjoint_union(point, point, [[0]])

        assert union.dist == ((0, 0), (0, 0))
        assert union.labels == ("o", "o'")

    def test_should_accept_admissible_cross_block(self, point, pair1):
        """Test a valid 3-point semimetric with cross block [1/2, 1/2]"""
        from ghmetric import disjoint_union

        union = disjoint_union(point, pair1, [["1/2", "1/2"]])

        assert union.dist == snapshot(
            (
                (Fraction(0, 1), Fraction(1, 2), Fraction(1, 2)),
                (Fraction(1, 2), Fraction(0, 1), Fraction(1, 1)),
                (Fraction(1, 2), Fraction(1, 1), Fraction(0, 1)),
            )
        )

    def test_should_accept_uneven_admissible_cross_block(self, point, pair1):
        from ghmetric import disjoint_union

        union = disjoint_union(point, pair1, [["1/4", 1]])

        assert union.dist[0] == (0, Fraction(1, 4), 1)

    def test_should_reject_inadmissible_cross_block(self, point, pair1):
        """Test that c(x, y2) = 2 > 1/4 + 1 is rejected"""
        from ghmetric import TriangleViolationError, disjoint_union

        with pytest.raises(TriangleViolationError):
            disjoint_union(point, pair1, [["1/4", 2]])

    def test_should_reject_wrong_cross_shape(self, point, pair1):
        from ghmetric import disjoint_union
        from ghmetric.errors import ShapeMismatchError

        with pytest.raises(ShapeMismatchError, match="1x2"):
            disjoint_union(point, pair1, [[1]])

    def test_should_reject_negative_cross_entry(self, point, pair1):
        from ghmetric import disjoint_union
        from ghmetric.errors import NegativeDistanceError

        with pytest.raises(NegativeDistanceError) as exc_info:
            disjoint_union(point, pair1, [[1, -1]])
        assert exc_info.value.details() == {"i": 0, "j": 2}


class TestInvariants:
    """Test suite for diameter, eccentricities, relabeling and subspaces"""

    def test_should_compute_diameters(self, point, pair3, line4):
        from ghmetric import diam

        assert diam(point) == 0
        assert diam(pair3) == 3
        assert diam(line4) == 3

    def test_should_compute_eccentricities(self, line4):
        from ghmetric import eccentricities

        assert eccentricities(line4) == (3, 2, 2, 3)

    def test_should_relabel_points(self, line4):
        """Test that position a of the result holds point perm[a]"""
        from ghmetric import relabel

        relabeled = relabel(line4, [3, 0, 2, 1])

        assert relabeled.labels == ("3", "0", "2", "1")
        assert relabeled.dist[0] == (0, 3, 1, 2)

    def test_should_reject_non_permutation(self, line4):
        from ghmetric import ValidationError, relabel

        with pytest.raises(ValidationError, match="permutation"):
            relabel(line4, [0, 0, 1, 2])

    def test_should_take_subspace_in_given_order(self, line4):
        from ghmetric import subspace

        sub = subspace(line4, [3, 0])

        assert sub.labels == ("3", "0")
        assert sub.dist == ((0, 3), (3, 0))

    def test_should_reject_out_of_range_subspace(self, line4):
        from ghmetric import subspace
        from ghmetric.errors import IndexOutOfRangeError

        with pytest.raises(IndexOutOfRangeError):
            subspace(line4, [0, 4])


class TestIsometry:
    """Test suite for isometry decision"""

    def test_should_find_relabeling(self, make_space):
        """Test that a relabeled copy is recognized"""
        from ghmetric import is_isometric, relabel

        # Given: A 4-point space and a relabeling of it
        x = make_space(
            ["a", "b", "c", "d"], [[0, 1, 2, 2], [1, 0, 2, 3], [2, 2, 0, 1], [2, 3, 1, 0]]
        )
        y = relabel(x, [2, 0, 3, 1])

        # When: User asks for an isometry
        mapping = is_isometric(x, y)

        # Then: The mapping should preserve every distance
        assert mapping is not None
        assert all(
            y.dist[mapping[i]][mapping[j]] == x.dist[i][j] for i in range(4) for j in range(4)
        )

    def test_should_reject_different_diameters(self, pair1, pair3):
        from ghmetric import is_isometric

        assert is_isometric(pair1, pair3) is None

    def test_should_reject_homometric_line_sets(self, make_space):
        """Test sets with equal difference multisets that are not congruent"""
        from ghmetric import is_isometric

        # Given: Two subsets of the line with the same multiset of pairwise differences
        a = [0, 1, 4, 10, 12, 17]
        b = [0, 1, 8, 11, 13, 17]
        x = make_space([str(p) for p in a], [[abs(p - q) for q in a] for p in a])
        y = make_space([str(p) for p in b], [[abs(p - q) for q in b] for p in b])
        assert sorted(x.dist[i][j] for i in range(6) for j in range(i)) == sorted(
            y.dist[i][j] for i in range(6) for j in range(i)
        )

        # When / Then: No isometry exists
        assert is_isometric(x, y) is None

    def test_should_be_symmetric_on_seeded_corpus(self, seeded_spaces):
        """Test that isometries are found in both directions and preserve distances"""
        from ghmetric import is_isometric

        spaces = seeded_spaces(range(1, 7))
        for x in spaces:
            for y in spaces:
                forward = is_isometric(x, y)
                assert (forward is None) == (is_isometric(y, x) is None)
                if forward is not None:
                    assert all(
                        y.dist[forward[i]][forward[j]] == x.dist[i][j]
                        for i in range(x.size)
                        for j in range(x.size)
                    )


class TestEmbeddings:
    """Test suite for isometric embeddings and correspondences"""

    def test_should_reject_distance_changing_map(self, pair1, line4):
        from ghmetric import IsometricEmbedding
        from ghmetric.errors import NotIsometricError

        with pytest.raises(NotIsometricError):
            IsometricEmbedding(source=pair1, target=line4, mapping=(0, 2))

    def test_should_compose_embeddings(self, pair1, line4, make_space):
        """Test composition of embeddings along matching spaces"""
        from ghmetric import IsometricEmbedding

        # Given: pair1 -> line segment {0, 1, 2} -> line4
        segment = make_space(["x", "y", "z"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        first = IsometricEmbedding(source=pair1, target=segment, mapping=(1, 2))
        second = IsometricEmbedding(source=segment, target=line4, mapping=(1, 2, 3))

        # When: User composes them
        composed = first.then(second)

        # Then: pair1 should land on points 2 and 3
        assert composed.image == (2, 3)
        assert composed.target == line4

    def test_should_refuse_to_compose_mismatched_embeddings(self, pair1, pair3):
        from ghmetric import identity_embedding
        from ghmetric.errors import ShapeMismatchError

        with pytest.raises(ShapeMismatchError):
            identity_embedding(pair1).then(identity_embedding(pair3))

    def test_should_normalize_correspondence_pairs(self, pair1, pair3):
        from ghmetric import Correspondence

        relation = Correspondence(left=pair1, right=pair3, pairs=((1, 1), (0, 0), (1, 1)))

        assert relation.pairs == ((0, 0), (1, 1))

    def test_should_reject_non_surjective_relation(self, pair1, pair3):
        from ghmetric import Correspondence
        from ghmetric.errors import NotSurjectiveError

        with pytest.raises(NotSurjectiveError, match="right points"):
            Correspondence(left=pair1, right=pair3, pairs=((0, 0), (1, 0)))


class TestCanonicalize:
    """Test suite for canonical forms"""

    def test_should_canonicalize_single_point(self, point):
        from ghmetric import canonicalize

        form = canonicalize(point)

        assert form.matrix == ((0,),)
        assert form.permutation == (0,)

    def test_should_pick_least_row_major_matrix(self, make_space):
        """Test the 3-point space d01=1, d02=2, d12=2"""
        from ghmetric import canonicalize

        # Given: A space listed with the far point first
        space = make_space(["c", "a", "b"], [[0, 2, 2], [2, 0, 1], [2, 1, 0]])

        # When: User canonicalizes it
        form = canonicalize(space)

        # Then: The close pair should come first
        assert form.matrix == ((0, 1, 2), (1, 0, 2), (2, 2, 0))
        assert form.permutation == (1, 2, 0)

    def test_should_be_invariant_under_relabeling(self, make_space):
        """Test that every relabeling of a space has the same canonical matrix"""
        from itertools import permutations

        from ghmetric import canonicalize, gh_class, relabel

        # Given: A 4-point space
        x = make_space(
            ["a", "b", "c", "d"], [[0, 1, 2, 3], [1, 0, 2, 3], [2, 2, 0, 4], [3, 3, 4, 0]]
        )
        expected = canonicalize(x)

        # When / Then: Every relabeling shares the class
        for perm in permutations(range(4)):
            assert gh_class(relabel(x, perm)) == expected.matrix

    def test_should_separate_non_isometric_spaces(self, pair1, pair3):
        from ghmetric import canonicalize

        assert not canonicalize(pair1).same_class(canonicalize(pair3))

    def test_should_agree_with_isometry_on_seeded_corpus(self, seeded_spaces):
        """Test same_class iff is_isometric for spaces of up to 6 points"""
        from ghmetric import canonicalize, is_isometric

        # Given: Seeded spaces of up to 6 points, each next to a relabeled copy
        spaces = seeded_spaces(range(1, 7))

        # When: User canonicalizes every space
        forms = [canonicalize(space) for space in spaces]

        # Then: Two forms match exactly when the spaces are isometric
        matches = 0
        for x, x_form in zip(spaces, forms):
            for y, y_form in zip(spaces, forms):
                same = x_form.same_class(y_form)
                assert same == (is_isometric(x, y) is not None)
                matches += same
        assert matches > len(spaces)

    def test_should_be_invariant_under_every_permutation(self):
        """Test all relabelings of spaces with 1 to 6 points, a symmetric cycle included"""
        from itertools import permutations

        from ghmetric import GeneratorParams, canonicalize, generate, relabel

        # Given: One seeded space per size and the 6-cycle
        spaces = [
            generate("graph-shortest-path", GeneratorParams(n=n, grid=2), seed=n)
            for n in range(1, 7)
        ]
        spaces.append(generate("cycle", GeneratorParams(n=6)))

        for space in spaces:
            expected = canonicalize(space).matrix
            for perm in permutations(range(space.size)):
                # When: User canonicalizes a relabeled copy
                relabeled = relabel(space, perm)
                form = canonicalize(relabeled)

                # Then: The matrix is unchanged and the permutation reproduces it
                assert form.matrix == expected
                assert relabel(relabeled, form.permutation).dist == expected

    def test_should_enforce_point_limit(self, line4):
        from ghmetric import Limits, SizeLimitError, canonicalize

        with pytest.raises(SizeLimitError) as exc_info:
            canonicalize(line4, limits=Limits(canonical_max_points=3))
        assert exc_info.value.details() == {"size": 4, "limit": 3}

    def test_should_read_point_limit_from_environment(self, line4, monkeypatch):
        from ghmetric import SizeLimitError, canonicalize

        monkeypatch.setenv("GH_METRIC_CANONICAL_MAX", "2")

        with pytest.raises(SizeLimitError):
            canonicalize(line4)

    def test_should_key_isometry_classes(self, seeded_spaces):
        """Test that gh_class groups spaces exactly into isometry classes"""
        from ghmetric import gh_class, is_isometric

        # Given: Seeded spaces with their relabeled copies
        spaces = seeded_spaces((3, 4))

        # When: User groups them by class key
        groups = {}
        for space in spaces:
            groups.setdefault(gh_class(space), []).append(space)

        # Then: Copies share a key and every group is one isometry class
        assert len(groups) <= len(spaces) // 2
        for members in groups.values():
            assert all(is_isometric(members[0], other) is not None for other in members)


class TestLimits:
    def test_should_reject_non_integer_environment_value(self, monkeypatch):
        from ghmetric import Limits, ValidationError

        monkeypatch.setenv("GH_METRIC_THREADS", "many")

        with pytest.raises(ValidationError, match="GH_METRIC_THREADS"):
            Limits.from_env()

    def test_should_let_overrides_win_over_environment(self, monkeypatch):
        from ghmetric import Limits

        monkeypatch.setenv("GH_METRIC_THREADS", "3")

        assert Limits.from_env().threads == 3
        assert Limits.from_env(threads=5).threads == 5
