"""CLI flows: artifacts on disk, exit codes, determinism, remote mode."""

import socket
import threading
import time

import pytest

from hyperfrac.cli import main

DECIMAL_IFS = "ifs v1 strictness=strict\naffine 1/10 0/1\naffine 1/10 9/10\n"
SATURATING_IFS = "ifs v1 strictness=weak\nparam saturating 1/1\n"
GRIDSET_EMPTY = "gridset v1 default=empty\n"


def run(args):
    return main([str(a) for a in args])


class TestAttractorCommand:
    def test_writes_cover_and_certificate(self, tmp_path, capsys):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        out = tmp_path / "attractor.set"
        assert run(["attractor", ifs, "--tol", "1/1000000", "--out", out]) == 0
        assert out.exists()
        printed = capsys.readouterr().out
        assert "iterations=6" in printed and "certified" in printed
        assert out.read_text().startswith("compactcover v1 resolution=1/2250000")

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.ifs"
        bad.write_text("garbage\n")
        out = tmp_path / "x.set"
        assert run(["attractor", bad, "--tol", "1/10", "--out", out]) == 2
        assert not out.exists()

    def test_cap_exceeded_exit_3(self, tmp_path):
        ifs = tmp_path / "weak.ifs"
        ifs.write_text(SATURATING_IFS)
        out = tmp_path / "x.set"
        code = run(
            ["attractor", ifs, "--tol", "1/1000000000", "--cap", "5", "--out", out]
        )
        assert code == 3

    def test_missing_file_exit_2(self, tmp_path):
        assert run(["attractor", tmp_path / "nope.ifs", "--tol", "1/10", "--out", tmp_path / "o"]) == 2

    def test_cap_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HYPERFRAC_CAP", "5")
        ifs = tmp_path / "weak.ifs"
        ifs.write_text(SATURATING_IFS)
        assert run(["attractor", ifs, "--tol", "1/1000000000", "--out", tmp_path / "o"]) == 3


class TestReduceCommand:
    def test_writes_cover_and_plan(self, tmp_path, capsys):
        grid = tmp_path / "empty.grid"
        grid.write_text(GRIDSET_EMPTY)
        out = tmp_path / "phi.set"
        assert run(["reduce", grid, "--levels", 1, "--depth", 4, "--out", out]) == 0
        assert out.exists() and (tmp_path / "phi.set.plan").exists()
        assert "resolution~=" in capsys.readouterr().out

    def test_level_cap_exit_3(self, tmp_path):
        grid = tmp_path / "empty.grid"
        grid.write_text(GRIDSET_EMPTY)
        assert run(["reduce", grid, "--levels", 5, "--out", tmp_path / "x.set"]) == 3


class TestHausdorffCommand:
    def test_known_value(self, tmp_path, capsys):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        a = tmp_path / "a.set"
        b = tmp_path / "b.set"
        run(["attractor", ifs, "--tol", "1/100", "--out", a])
        run(["attractor", ifs, "--tol", "1/1000", "--out", b])
        capsys.readouterr()
        assert run(["hausdorff", a, b]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "/" in lines[0]
        assert lines[1].startswith("ideal-distance within")

    def test_identical_files(self, tmp_path, capsys):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        a = tmp_path / "a.set"
        run(["attractor", ifs, "--tol", "1/100", "--out", a])
        capsys.readouterr()
        assert run(["hausdorff", a, a]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "0/1"


class TestRenderCommand:
    def test_deterministic_output(self, tmp_path):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        cover = tmp_path / "c.set"
        run(["attractor", ifs, "--tol", "1/1000", "--out", cover])
        svg1 = tmp_path / "one.svg"
        svg2 = tmp_path / "two.svg"
        assert run(["render", cover, "--out", svg1]) == 0
        assert run(["render", cover, "--out", svg2]) == 0
        assert svg1.read_bytes() == svg2.read_bytes()
        assert svg1.read_text().count("<rect") == 8

    def test_embed_dim_flag(self, tmp_path):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        cover = tmp_path / "c.set"
        run(["attractor", ifs, "--tol", "1/10", "--out", cover])
        out = tmp_path / "d.svg"
        assert run(["render", cover, "--embed-dim", 4, "--out", out]) == 0
        assert "embed_dim=4" in out.read_text()


class TestVerifyCommand:
    def test_passing_suite_exit_0(self, capsys):
        assert run(["verify", "addressing", "--maxlen", 5]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_ktilde_range(self, capsys):
        assert run(["verify", "conditions", "--ktilde", "2..10"]) == 0
        assert "kt2..10" in capsys.readouterr().out

    def test_unknown_suite_exit_2(self):
        assert run(["verify", "not-a-suite"]) == 2

    def test_bad_ktilde_exit_2(self):
        assert run(["verify", "conditions", "--ktilde", "banana"]) == 2

    def test_seeded_suite(self, capsys):
        assert run(["verify", "preimage", "--random", 200, "--seed", 7]) == 0
        assert "random-200-seed7" in capsys.readouterr().out


@pytest.mark.filterwarnings("ignore::DeprecationWarning")
class TestRemoteMode:
    @pytest.fixture(scope="class")
    def server_url(self):
        import uvicorn

        from hyperfrac.service.app import create_app

        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        config = uvicorn.Config(
            create_app(), host="127.0.0.1", port=port, log_level="error"
        )
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        deadline = time.time() + 15
        while not server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.05)
        yield f"http://127.0.0.1:{port}"
        server.should_exit = True
        thread.join(timeout=5)

    def test_attractor_via_http(self, server_url, tmp_path, capsys):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        out = tmp_path / "remote.set"
        code = run(
            ["--server", server_url, "attractor", ifs, "--tol", "1/1000", "--out", out]
        )
        assert code == 0
        assert out.read_text().startswith("compactcover v1")
        assert "iterations=" in capsys.readouterr().out

    def test_remote_parse_error_exit_2(self, server_url, tmp_path):
        bad = tmp_path / "bad.ifs"
        bad.write_text("nope\n")
        assert run(["--server", server_url, "attractor", bad, "--tol", "1/10", "--out", tmp_path / "o"]) == 2

    def test_remote_verify(self, server_url, capsys):
        assert run(["--server", server_url, "verify", "gaps"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_unreachable_server_exit_2(self, tmp_path):
        ifs = tmp_path / "decimal.ifs"
        ifs.write_text(DECIMAL_IFS)
        code = run(
            [
                "--server",
                "http://127.0.0.1:1",
                "attractor",
                ifs,
                "--tol",
                "1/10",
                "--out",
                tmp_path / "o",
            ]
        )
        assert code == 2
