# Copyright 2026 The boostfreq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end tests of the boostfreq command-line tool."""

import csv
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("BOOSTFREQ_CLI")
MAKE_CORPUS = os.environ.get("BOOSTFREQ_MAKE_CORPUS")

pytestmark = pytest.mark.skipif(
    not (CLI and MAKE_CORPUS), reason="BOOSTFREQ_CLI / BOOSTFREQ_MAKE_CORPUS not set"
)

FAST = ["--dims", "20", "--window", "2"]


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("BOOSTFREQ_OUTPUT_DIR", None)
    full_env.update(env or {})
    return subprocess.run(
        [CLI, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd
    )


def ok(*args, **kw):
    res = run(*args, **kw)
    assert res.returncode == 0, res.stderr
    return res


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus")
    # 6 authors x 3 texts, enough topic words for a 1000-word vocabulary.
    subprocess.run([MAKE_CORPUS, *map(str, (path, 6, 3, 600, 150, 11))], check=True)
    return path


@pytest.fixture(scope="session")
def pipeline(tmp_path_factory, corpus):
    out = tmp_path_factory.mktemp("out")
    ok("ingest", "--corpus", corpus, "-o", out)
    ok("train-vectors", "--corpus", corpus, "-o", out, *FAST)
    ok("neighbors", "--corpus", corpus, "-o", out)
    ok("grid", "-o", out)
    ok("grid", "--mode", "radius", "--corpus", corpus, "-o", out)
    ok("report", "-o", out)
    ok("report", "--mode", "radius", "-o", out)
    return out


def grid_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_help_and_usage_errors(tmp_path):
    assert run("--help").returncode == 0
    assert "grid" in run("--help").stdout
    assert run().returncode == 1
    assert run("grid", "--no-such-flag").returncode == 1
    assert run("grid", "--measures", "euclid", "-o", tmp_path).returncode == 1
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    res = run("grid", "--config", bad, "-o", tmp_path)
    assert res.returncode == 1
    assert "colour" in res.stderr


def test_data_errors(tmp_path):
    res = run("ingest", "--corpus", tmp_path / "missing", "-o", tmp_path / "o")
    assert res.returncode == 2
    res = run("grid", "-o", tmp_path / "empty")
    assert res.returncode == 2
    assert "ingest" in res.stderr
    lonely = tmp_path / "lonely"
    lonely.mkdir()
    (lonely / "Solo_One.txt").write_text("a b c")
    (lonely / "Pair_One.txt").write_text("a b")
    (lonely / "Pair_Two.txt").write_text("b c")
    ok("ingest", "--corpus", lonely, "-o", tmp_path / "l")
    ok("neighbors", "--corpus", lonely, "-o", tmp_path / "l", "--dims", "2")
    res = run("grid", "-o", tmp_path / "l", "--mfw-list", "2", "--background-list", "1")
    assert res.returncode == 2
    assert "Solo" in res.stderr


def test_grid_shapes(pipeline):
    knn = grid_rows(pipeline / "grid_knn.csv")
    radius = grid_rows(pipeline / "grid_radius.csv")
    for rows, width in ((knn, 14), (radius, 37)):
        measures = {r["measure"] for r in rows}
        assert measures == {"cosine-delta", "burrows-delta", "eder-delta", "manhattan"}
        for m in measures:
            cells = [r for r in rows if r["measure"] == m]
            assert len({r["mfw"] for r in cells}) == 10
            assert len({r["background"] for r in cells}) == width
            assert len(cells) == 10 * width
            for r in cells:
                f1 = float(r["f1"])
                assert 0.0 <= f1 <= 1.0
                assert float(r["gain"]) == pytest.approx(f1 - float(r["baseline_f1"]), abs=1e-12)
    for mode in ("knn", "radius"):
        for m in ("cosine-delta", "manhattan"):
            svg = (pipeline / f"heatmap_{mode}_{m}.svg").read_text()
            assert "<svg" in svg and "</svg>" in svg
            assert (pipeline / f"gain_{mode}_{m}.svg").exists()
        assert (pipeline / f"summary_{mode}.csv").exists()


def test_artifacts_are_reproducible(tmp_path, corpus, pipeline):
    other = tmp_path / "again"
    ok("ingest", "--corpus", corpus, "-o", other, "-j", "3")
    ok("train-vectors", "--corpus", corpus, "-o", other, *FAST)
    ok("neighbors", "--corpus", corpus, "-o", other, "-j", "2")
    ok("grid", "-o", other, "-j", "4")
    for name in ("dtm.tsv", "manifest.tsv", "vectors.txt", "neighbors.tsv", "grid_knn.csv", "gain_knn.csv"):
        assert (other / name).read_bytes() == (pipeline / name).read_bytes(), name
    ok("grid", "-o", other, "-j", "1")
    assert (other / "grid_knn.csv").read_bytes() == (pipeline / "grid_knn.csv").read_bytes()


def test_freqs(pipeline, tmp_path):
    ok("freqs", "--kind", "classical", "--mfw", "50", "-o", pipeline)
    ok("freqs", "--kind", "enhanced", "--mfw", "50", "--background", "5", "-o", pipeline)
    ok("freqs", "--kind", "radius", "--mfw", "50", "--threshold", "-1", "-o", pipeline, "--out", tmp_path / "r.tsv")
    classical = (pipeline / "freqs_classical_mfw50.tsv").read_text()
    # Radius -1 takes the whole vocabulary as background: classical values.
    assert (tmp_path / "r.tsv").read_text() == classical
    header = classical.splitlines()[0].split("\t")
    assert len(header) == 51
    assert run("freqs", "--kind", "enhanced", "--mfw", "50", "--background", "0", "-o", pipeline).returncode == 1


def test_config_precedence(tmp_path, corpus):
    conf = tmp_path / "run.conf"
    conf.write_text(f"corpus_dir = {corpus}\nmfw_list = 10,20\nseed = 9\n")
    printed = ok("grid", "--config", conf, "--mfw-list", "30", "--print-config").stdout
    assert "mfw_list = 30" in printed
    assert "seed = 9" in printed
    assert f"corpus_dir = {corpus}" in printed
    # Output directory: flag, then config, then environment.
    env_dir = tmp_path / "from_env"
    ok("ingest", "--corpus", corpus, env={"BOOSTFREQ_OUTPUT_DIR": str(env_dir)})
    assert (env_dir / "dtm.tsv").exists()
    ok("ingest", "--corpus", corpus, cwd=tmp_path)
    assert (tmp_path / "boostfreq-out" / "dtm.tsv").exists()
