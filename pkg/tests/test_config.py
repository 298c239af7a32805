"""Application config overrides, worker sizing, progress reporting and logger file handlers."""

import json
import logging

import pytest

from molcav import config as config_module
from molcav.config import DEFAULT_CONFIG, reload_config
from molcav.utils import persistent_config
from molcav.utils.hardware import get_worker_count, resolve_jobs
from molcav.utils.log import clear_logger_configuration, reconfigure_loggers, setup_logger
from molcav.utils.progress_reporter import progress_iter, report_progress, set_progress_callback


@pytest.fixture
def user_config(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    monkeypatch.setattr(persistent_config, "USER_CONFIG_PATH", path)
    yield path
    monkeypatch.undo()
    reload_config()


def test_defaults():
    assert DEFAULT_CONFIG.SPECTRUM_POINTS == 2001
    assert DEFAULT_CONFIG.TIME_GRID_STEP_S == pytest.approx(5e-12)
    assert DEFAULT_CONFIG.PRESETS_DIR.name == "presets"


def test_user_file_overrides_fields_in_place(user_config, tmp_path):
    user_config.write_text(json.dumps({"FIT_MAX_ITER": 17, "OUTPUT_ROOT": str(tmp_path / "runs")}))
    reload_config()
    assert config_module.DEFAULT_CONFIG is DEFAULT_CONFIG
    assert DEFAULT_CONFIG.FIT_MAX_ITER == 17
    assert DEFAULT_CONFIG.OUTPUT_ROOT == tmp_path / "runs"


def test_unreadable_user_file_is_ignored(user_config, capsys):
    user_config.write_text("{not json")
    assert persistent_config.load_persistent_config() == {}
    assert "Failed to load persistent config" in capsys.readouterr().out


@pytest.mark.parametrize("requested, tasks, expected", [(3, 10, 3), (8, 2, 2), (1, 5, 1)])
def test_resolve_jobs(requested, tasks, expected):
    assert resolve_jobs(requested, tasks) == expected


def test_derived_worker_count_is_capped_by_tasks():
    assert resolve_jobs(0, 1) == 1
    assert get_worker_count("cpu") >= 2


def test_file_handlers_follow_the_run(tmp_path):
    logger = setup_logger("physics.test_run_log")
    try:
        log_dir = reconfigure_loggers(tmp_path / "run")
        logger.info("[test] hello")
        for handler in logger.handlers:
            handler.flush()
        text = (log_dir / "physics_test_run_log.log.txt").read_text()
        assert "| physics.test_run_log | INFO" in text
        assert "[test] hello" in text
    finally:
        clear_logger_configuration()
    assert not any(isinstance(h, logging.FileHandler) for h in logger.handlers)


def test_progress_iter_reports_through_callback():
    events = []
    set_progress_callback(lambda current, total, message: events.append((current, total, message)))
    try:
        assert list(progress_iter(range(4), desc="fano", unit="panel")) == [0, 1, 2, 3]
        report_progress(2, 3, "stage")
    finally:
        set_progress_callback(None)
    assert events[0] == (0, 4, "fano: starting...")
    assert (4, 4, "fano: 4/4 panel") in events
    assert events[-2] == (4, 4, "fano complete")
    assert events[-1] == (2, 3, "stage")


def test_progress_without_callback_is_silent():
    assert list(progress_iter(iter([1, 2]))) == [1, 2]
    report_progress(1, 1, "ignored")


def test_unknown_task_type():
    with pytest.raises(ValueError, match="Unknown task type: gpu"):
        get_worker_count("gpu")
