"""Script loading, offline simulation, and the command line front end."""

import json

import pytest

from innerself.audio import write_wav
from innerself.cli import build_parser, main
from innerself.emotion.classify import EmotionLabel
from innerself.errors import ScriptParseError
from innerself.fixtures import enrollment_fixture, fixture_clip, fixture_transcript
from innerself.service.simulate import load_script, run_simulation

from conftest import DEMO_SCRIPT


@pytest.fixture()
def script_dir(tmp_path):
    """Directory holding two fixture wavs the scripts can reference."""
    write_wav(tmp_path / "anx.wav", fixture_clip(EmotionLabel.ANXIETY))
    write_wav(tmp_path / "neu.wav", fixture_clip(EmotionLabel.NEUTRAL, seed=1))
    return tmp_path


def write_script(directory, lines, name="script.jsonl"):
    path = directory / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def turn_line(wav, transcript):
    return json.dumps({"audio": wav, "transcript": transcript})


ANX = turn_line("anx.wav", fixture_transcript(EmotionLabel.ANXIETY))
NEU = turn_line("neu.wav", "Today was fine, I just want to plan tomorrow morning.")


class TestLoadScript:
    def test_demo_script_parses(self):
        script = load_script(DEMO_SCRIPT)
        assert script.session_id == "demo"
        assert script.user_name == "Ana"
        assert script.alpha == 600
        assert len(script.enroll) == 3
        assert len(script.turns) == 10
        assert all(p.is_file() for p, _ in script.enroll)
        assert all(t.audio_path.is_file() for t in script.turns)
        assert script.turns[0].transcript.startswith("I CAN'T EVER")

    def test_defaults_without_header(self, script_dir):
        script = load_script(write_script(script_dir, [ANX]))
        assert script.session_id == "sim"
        assert script.user_name == "Friend"
        assert script.alpha == 600
        assert len(script.turns) == 1

    def test_blank_lines_skipped_line_numbers_kept(self, script_dir):
        path = write_script(
            script_dir,
            ['{"session": {"user_name": "Bo"}}', "", ANX, "not json at all"],
        )
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert info.value.line == 4
        assert "invalid JSON" in str(info.value)

    def test_non_object_line(self, script_dir):
        path = write_script(script_dir, [ANX, "[1, 2]"])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert info.value.line == 2
        assert "JSON object" in str(info.value)

    def test_header_must_come_first(self, script_dir):
        path = write_script(script_dir, [ANX, '{"session": {"user_name": "Bo"}}'])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert info.value.line == 2
        assert "first" in str(info.value)

    def test_turn_requires_transcript(self, script_dir):
        path = write_script(script_dir, ['{"audio": "anx.wav"}'])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert info.value.line == 1
        assert "transcript" in str(info.value)

    def test_turn_requires_audio(self, script_dir):
        path = write_script(script_dir, ['{"transcript": "hello"}'])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert "audio" in str(info.value)

    def test_enroll_entry_requires_audio(self, script_dir):
        path = write_script(script_dir, ['{"enroll": [{"transcript": "hi"}]}'])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert info.value.line == 1
        assert "enroll" in str(info.value)

    def test_missing_wav_named(self, script_dir):
        path = write_script(script_dir, [turn_line("ghost.wav", "hello world")])
        with pytest.raises(ScriptParseError) as info:
            load_script(path)
        assert "missing fixture wav" in str(info.value)
        assert "ghost.wav" in str(info.value)

    def test_unreadable_script_is_line_zero(self, tmp_path):
        with pytest.raises(ScriptParseError) as info:
            load_script(tmp_path / "absent.jsonl")
        assert info.value.line == 0


class TestRunSimulation:
    def test_two_runs_identical(self, script_dir):
        path = write_script(script_dir, [ANX, NEU])
        first = run_simulation(path, data_dir=script_dir / "run1")
        second = run_simulation(path, data_dir=script_dir / "run2")
        assert first.to_jsonl() == second.to_jsonl()
        assert len(first.outcomes) == 2

    def test_simulate_mode_artifacts(self, script_dir):
        path = write_script(script_dir, [ANX, NEU])
        result = run_simulation(path, data_dir=script_dir / "run")
        assert result.all_pass
        out = result.outcomes[0]
        assert out.timestamp == "turn-00000"
        assert result.outcomes[1].timestamp == "turn-00002"
        assert all(v == 0.0 for v in out.latency_ms.values())
        assert out.strategy == ("immediate_reframe", 0)

    def test_demo_session_end_to_end(self, tmp_path):
        result = run_simulation(DEMO_SCRIPT, data_dir=tmp_path / "demo")
        assert len(result.outcomes) == 10
        assert result.all_pass
        # enrolled in the header, so every reply carries audio
        assert all(o.response_audio_ref for o in result.outcomes)

    def test_temp_dir_when_unset(self, script_dir):
        path = write_script(script_dir, [ANX])
        result = run_simulation(path)
        assert result.data_dir.is_dir()
        assert (result.data_dir / "sim").is_dir()


class TestCliSimulate:
    def test_stdout_jsonl_exit_zero(self, script_dir, capsys):
        path = write_script(script_dir, [ANX, NEU])
        code = main(["simulate", str(path), "--data-dir", str(script_dir / "d")])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first["turn_index"] == 0
        assert first["strategy"] == {"id": "immediate_reframe", "step": 0}

    def test_out_file(self, script_dir, capsys):
        path = write_script(script_dir, [ANX])
        out = script_dir / "outcomes.jsonl"
        code = main(
            ["simulate", str(path), "--out", str(out), "--data-dir", str(script_dir / "d")]
        )
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text().splitlines()[0])["turn_index"] == 0

    def test_constraint_failure_exits_one(self, script_dir, monkeypatch, capsys):
        class FailedRun:
            all_pass = False

            def to_jsonl(self):
                return "{}\n"

        import innerself.service.simulate as simulate_mod

        monkeypatch.setattr(simulate_mod, "run_simulation", lambda *a, **k: FailedRun())
        path = write_script(script_dir, [ANX])
        assert main(["simulate", str(path)]) == 1

    def test_parse_error_exits_two(self, script_dir, capsys):
        path = write_script(script_dir, [ANX, "garbage"])
        assert main(["simulate", str(path)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error: line 2:")

    def test_missing_script_exits_two(self, tmp_path, capsys):
        assert main(["simulate", str(tmp_path / "nope.jsonl")]) == 2
        assert capsys.readouterr().err.startswith("error: line 0:")

    def test_reused_data_dir_exits_two(self, script_dir, capsys):
        path = write_script(script_dir, [ANX])
        d = script_dir / "same"
        assert main(["simulate", str(path), "--data-dir", str(d)]) == 0
        assert main(["simulate", str(path), "--data-dir", str(d)]) == 2
        assert "error:" in capsys.readouterr().err


class TestCliEnrollExport:
    def _write_samples(self, directory, n=3):
        args = []
        for i in range(n):
            clip, text = enrollment_fixture(i)
            wav = directory / f"enroll_{i}.wav"
            write_wav(wav, clip)
            args += ["--audio", str(wav), "--text", text]
        return args

    def test_enroll_creates_session_and_profile(self, tmp_path, capsys):
        data_dir = tmp_path / "store"
        sample_args = self._write_samples(tmp_path)
        code = main(
            ["enroll", "--data-dir", str(data_dir), "--session", "s1", "--user", "Ana"]
            + sample_args
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["session_id"] == "s1"
        assert report["sample_count"] == 3
        assert report["warnings"] == []

    def test_enroll_count_mismatch(self, tmp_path, capsys):
        clip, text = enrollment_fixture(0)
        wav = tmp_path / "a.wav"
        write_wav(wav, clip)
        code = main(
            [
                "enroll",
                "--data-dir",
                str(tmp_path / "store"),
                "--session",
                "s1",
                "--audio",
                str(wav),
                "--text",
                text,
                "--text",
                "extra",
            ]
        )
        assert code == 2
        assert "counts differ" in capsys.readouterr().err

    def test_export_stdout(self, tmp_path, capsys):
        data_dir = tmp_path / "store"
        main(
            ["enroll", "--data-dir", str(data_dir), "--session", "s1"]
            + self._write_samples(tmp_path)
        )
        capsys.readouterr()
        code = main(["export", "--data-dir", str(data_dir), "--session", "s1"])
        assert code == 0
        document = json.loads(capsys.readouterr().out)
        assert document["schema"] == "innerself-export/1"
        assert document["session"]["session_id"] == "s1"

    def test_export_out_file(self, tmp_path, capsys):
        data_dir = tmp_path / "store"
        main(
            ["enroll", "--data-dir", str(data_dir), "--session", "s1"]
            + self._write_samples(tmp_path)
        )
        out = tmp_path / "doc.json"
        code = main(
            ["export", "--data-dir", str(data_dir), "--session", "s1", "--out", str(out)]
        )
        assert code == 0
        assert json.loads(out.read_text())["session"]["session_id"] == "s1"

    def test_export_unknown_session(self, tmp_path, capsys):
        code = main(["export", "--data-dir", str(tmp_path / "store"), "--session", "sx"])
        assert code == 2
        assert "error [UNKNOWN_SESSION]" in capsys.readouterr().err


class TestParser:
    def test_serve_args_parse(self):
        args = build_parser().parse_args(
            ["serve", "--host", "0.0.0.0", "--port", "9000", "--data-dir", "/tmp/x"]
        )
        assert args.command == "serve"
        assert args.port == 9000

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
