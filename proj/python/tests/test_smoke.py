# Copyright 2026 The qkonc Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json
import math

import numpy as np
import pytest

import qkonc


def test_product_rx_gram_matches_cos_squared():
    enc = qkonc.build_encoding(qkonc.AnsatzSpec("product-rx", 1))
    g = qkonc.gram(enc, np.array([[0.0], [math.pi / 2], [math.pi]]))
    want = np.array([[1, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]])
    assert np.max(np.abs(g - want)) <= 1e-12


def test_kernel_routes_agree():
    enc = qkonc.build_encoding(qkonc.AnsatzSpec("havlicek", 3, depth=2))
    x = [0.1, -0.4, 2.0]
    y = [1.3, 0.2, -2.5]
    assert abs(qkonc.kernel_entry(enc, x, y) - qkonc.kernel_entry_compiled(enc, x, y)) <= 1e-12


def test_simulate_returns_normalized_amplitudes():
    enc = qkonc.build_encoding(qkonc.AnsatzSpec("perm", 4, depth=4))
    amps = qkonc.simulate(enc, [0.3, 0.1, -0.7, 1.2])
    assert amps.shape == (16,)
    assert abs(np.sum(np.abs(amps) ** 2) - 1) <= 1e-12


def test_rx_gradient_and_variance():
    circuit = qkonc.build_ansatz(qkonc.AnsatzSpec("product-rx", 1)).swap_roles()
    assert qkonc.gradient(circuit, [math.pi / 2], rule="parameter_shift")[0] == pytest.approx(-0.5)
    report = qkonc.bp_variance(circuit, samples=10000, seed=3)
    assert abs(report["max_variance"] - 0.125) <= 3 * report["max_variance_se"]


def test_fit_decay_and_spectrum():
    ns = list(range(2, 9))
    fit = qkonc.fit_decay(ns, [4.0 ** -n for n in ns])
    assert fit["base"] == pytest.approx(4.0, abs=1e-9)
    assert fit["classification"] == "exponential"
    spec = qkonc.spectrum_flatness(np.ones((10, 10)))
    assert spec["flatness"] == pytest.approx(0.1)


def test_lemma_and_theorem_checks():
    rng = np.random.default_rng(0)
    rows = []
    for x in rng.uniform(-math.pi, math.pi, 20):
        rows.append(list(np.cos(x - rng.uniform(-math.pi, math.pi, 200))))
    assert qkonc.lemma_check(rows)["upper_pass"]
    report = qkonc.theorem_check(qkonc.AnsatzSpec("product-rx", 2), seed=1)
    assert report["pass"] and report["identity_bit_exact"]


def test_data_helpers():
    pts = qkonc.synthetic_uniform(50, 3, seed=2)
    assert pts.shape == (50, 3)
    reduced = qkonc.normalize_range(qkonc.pca_reduce(pts, 2))
    assert reduced.shape == (50, 2)
    assert np.all(np.abs(reduced) <= math.pi + 1e-12)


def test_errors_carry_their_code():
    enc = qkonc.build_encoding(qkonc.AnsatzSpec("havlicek", 2))
    with pytest.raises(qkonc.QkoncError, match="dimension_mismatch"):
        qkonc.kernel_entry(enc, [0.1], [0.2, 0.3])
    with pytest.raises(ValueError):
        qkonc.AnsatzSpec("qaoa", 2)


def test_run_command_writes_reports(tmp_path):
    config = {"ansatz": "havlicek", "qubits": [2, 3, 4], "points": 8, "seed": 5, "out": str(tmp_path)}
    result = qkonc.run_command("sweep", config)
    assert result["exit_code"] == 0
    fit = json.loads((tmp_path / "fit.json").read_text())
    assert fit["config"]["seed"] == 5
    assert (tmp_path / "sweep.csv").read_text().splitlines()[1].startswith("n,var_total")
