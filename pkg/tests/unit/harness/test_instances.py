"""
Unit tests for planted instance generation and manifests.
"""
import json

import pytest

from harness.instances import gen_instance, load_instance, save_instance, verification_mode
from matchers.types import EquivType
from matchers.verify import verify_witness
from utils.circuit import truth_table_array
from utils.errors import RevMatchError


class TestGenInstance:
    """Test instance generation."""

    def test_reproducible(self):
        """Test that a fixed seed reproduces the instance."""
        a = gen_instance(EquivType.parse('NP-I'), 5, seed=3)
        b = gen_instance(EquivType.parse('NP-I'), 5, seed=3)
        assert a.c1 == b.c1 and a.c2 == b.c2 and a.planted == b.planted

    def test_planted_verifies(self):
        """Test every equivalence at n = 6."""
        for equiv in EquivType.all():
            instance = gen_instance(equiv, 6, seed=1)
            assert verify_witness(instance.c1, instance.c2, instance.planted)

    def test_identity_equivalence(self):
        """Test that I-I gives C1 = C2 functionally."""
        instance = gen_instance(EquivType.parse('I-I'), 4, seed=0)
        assert list(truth_table_array(instance.c1)) == list(truth_table_array(instance.c2))

    def test_inverses_attached(self):
        """Test inverse flags."""
        instance = gen_instance(EquivType.parse('P-I'), 4, with_inverses=(True, False))
        assert instance.inv1 is not None and instance.inv2 is None
        o1, o2 = instance.oracles(validate=True)
        assert o1.has_inverse and not o2.has_inverse

    def test_invalid_width(self):
        """Test that n must be positive."""
        with pytest.raises(ValueError):
            gen_instance(EquivType.parse('N-I'), 0)

    def test_verification_mode(self):
        """Test the exhaustive cut-off."""
        assert verification_mode(10) == 'exhaustive'
        assert verification_mode(11) == 'sampled'

    def test_wide_instance(self):
        """Test generation and sampled verification on 64 wires."""
        instance = gen_instance(EquivType.parse('I-N'), 64, seed=1)
        assert instance.n == 64
        assert verification_mode(64) == 'sampled'
        assert verify_witness(instance.c1, instance.c2, instance.planted, 'sampled', seed=2)


class TestManifest:
    """Test saving and loading instances."""

    def test_round_trip(self, tmp_path):
        """Test that a saved instance loads back unchanged."""
        instance = gen_instance(EquivType.parse('I-NP'), 5, seed=9, with_inverses=(False, True))
        path = save_instance(instance, str(tmp_path))
        manifest = json.loads(open(path, encoding='utf-8').read())
        assert manifest['equiv'] == 'I-NP'
        assert manifest['files'] == {'c1': 'c1.real', 'c2': 'c2.real', 'inv2': 'c2_inv.real'}
        loaded = load_instance(str(tmp_path))
        assert loaded.planted == instance.planted
        assert loaded.inv1 is None and loaded.inv2 is not None
        assert list(truth_table_array(loaded.c1)) == list(truth_table_array(instance.c1))

    def test_missing_manifest(self, tmp_path):
        """Test that a missing manifest raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_instance(str(tmp_path))

    def test_manifest_without_circuits(self, tmp_path):
        """Test that both circuit files are required."""
        (tmp_path / 'manifest.json').write_text(json.dumps({'equiv': 'N-I', 'files': {'c1': 'c1.real'}}))
        with pytest.raises(RevMatchError):
            load_instance(str(tmp_path))


if __name__ == '__main__':
    pytest.main([__file__])
