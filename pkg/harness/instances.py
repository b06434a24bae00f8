"""
Planted matching instances and their on-disk manifests.
"""
import json
import logging
import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from matchers.types import EquivType, MatchWitness, apply_witness
from matchers.verify import verify_witness
from utils.circuit import Circuit, NegationMap, PermutationMap, invert, random_circuit
from utils.config import LIMITS, MATCH_DEFAULTS
from utils.errors import RevMatchError
from utils.oracle import Oracle
from utils.real_format import read_real_file, write_real_file

MANIFEST_NAME = 'manifest.json'


@dataclass
class Instance:
    """C1 = T_Y . C2 . T_X for the planted witness; inverses attached on request."""
    equiv: EquivType
    c1: Circuit
    c2: Circuit
    planted: Optional[MatchWitness]
    seed: Optional[int]
    inv1: Optional[Circuit] = None
    inv2: Optional[Circuit] = None

    @property
    def n(self) -> int:
        return self.c1.width

    def oracles(self, validate: bool = False) -> Tuple[Oracle, Oracle]:
        """Fresh counted oracles; pass validate=True for inverses from untrusted files."""
        return Oracle(self.c1, self.inv1, validate), Oracle(self.c2, self.inv2, validate)


def verification_mode(n: int) -> str:
    return 'exhaustive' if n <= LIMITS['exhaustive_check_width'] else 'sampled'


def gen_instance(equiv: EquivType, n: int, gate_count: int = MATCH_DEFAULTS['gate_count'],
                 seed: int = MATCH_DEFAULTS['seed'],
                 with_inverses: Tuple[bool, bool] = (False, False)) -> Instance:
    """
    Generate a planted instance.

    C2 is a random circuit; each map the equivalence needs is sampled
    uniformly; C1 is composed from them.

    Args:
        equiv: Equivalence to plant
        n: Width
        gate_count: Gates in C2
        seed: Seed for C2 and every planted map
        with_inverses: Whether to attach C1^-1 and C2^-1

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        logging.error("Invalid instance width: %s", n)
        raise ValueError(f"Instance width must be at least 1, got {n}")
    rng = np.random.default_rng(seed)
    c2 = random_circuit(n, gate_count, int(rng.integers(1 << 31)))
    x_side, y_side = equiv.input_side, equiv.output_side
    planted = MatchWitness(
        equiv,
        nu_x=NegationMap.random(n, rng) if x_side.negates else None,
        pi_x=PermutationMap.random(n, rng) if x_side.permutes else None,
        nu_y=NegationMap.random(n, rng) if y_side.negates else None,
        pi_y=PermutationMap.random(n, rng) if y_side.permutes else None,
    )
    c1 = apply_witness(c2, planted)
    if not verify_witness(c1, c2, planted, verification_mode(n), seed=seed):
        raise RevMatchError(f"Planted {equiv.label} witness does not verify")
    inv1 = invert(c1) if with_inverses[0] else None
    inv2 = invert(c2) if with_inverses[1] else None
    logging.info("Generated %s instance: n=%d, gates=%d, seed=%s", equiv.label, n, gate_count, seed)
    return Instance(equiv, c1, c2, planted, seed, inv1, inv2)


def save_instance(instance: Instance, out_dir: str) -> str:
    """
    Write the circuits as .real files plus a JSON manifest.

    Returns:
        Path of the manifest
    """
    os.makedirs(out_dir, exist_ok=True)
    files = {'c1': 'c1.real', 'c2': 'c2.real'}
    if instance.inv1 is not None:
        files['inv1'] = 'c1_inv.real'
    if instance.inv2 is not None:
        files['inv2'] = 'c2_inv.real'
    for key, name in files.items():
        write_real_file(getattr(instance, key), os.path.join(out_dir, name))
    manifest = {
        'equiv': instance.equiv.label,
        'n': instance.n,
        'seed': instance.seed,
        'files': files,
        'planted': instance.planted.to_dict() if instance.planted is not None else None,
    }
    path = os.path.join(out_dir, MANIFEST_NAME)
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write('\n')
    logging.info("Saved %s instance to %s", instance.equiv.label, out_dir)
    return path


def load_instance(path: str) -> Instance:
    """Load an instance from a manifest file or the directory holding one."""
    if os.path.isdir(path):
        path = os.path.join(path, MANIFEST_NAME)
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            manifest = json.load(handle)
    except FileNotFoundError:
        logging.error("Manifest not found at %s", path)
        raise
    base = os.path.dirname(path)
    files = manifest.get('files', {})
    missing = [key for key in ('c1', 'c2') if key not in files]
    if missing:
        raise RevMatchError(f"Manifest {path} lacks circuit files: {missing}")
    circuits = {key: read_real_file(os.path.join(base, name)) for key, name in files.items()}
    planted = manifest.get('planted')
    return Instance(
        equiv=EquivType.parse(manifest['equiv']),
        c1=circuits['c1'],
        c2=circuits['c2'],
        planted=MatchWitness.from_dict(planted) if planted else None,
        seed=manifest.get('seed'),
        inv1=circuits.get('inv1'),
        inv2=circuits.get('inv2'),
    )
