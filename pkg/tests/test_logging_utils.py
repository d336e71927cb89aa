import logging

from utils.configHandling_utils.logging_utils import get_function_logger, log_configuration, setup_logger # type: ignore


class Step:
    def __init__(self, log_dir):
        self.log_dir = log_dir

    @get_function_logger
    def run_suites(self):
        return 'done'


def test_setup_logger_replaces_file_handlers(tmp_path):
    setup_logger('dyform_test_handlers', tmp_path / 'a.log')
    logger = setup_logger('dyform_test_handlers', tmp_path / 'b.log')
    files = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert len(files) == 1
    logger.info("second run")
    files[0].flush()
    assert 'second run' in (tmp_path / 'b.log').read_text()


def test_function_logger_writes_a_step_log(tmp_path):
    assert Step(tmp_path / 'logs').run_suites() == 'done'
    text = (tmp_path / 'logs' / 'run_suites.log').read_text()
    assert 'Step run_suites called' in text
    assert 'Step run_suites finished' in text


def test_function_logger_without_log_dir():
    @get_function_logger
    def plain(x):
        return x + 1
    assert plain(1) == 2


def test_log_configuration_copies_the_file(tmp_path):
    src = tmp_path / 'config_active.yaml'
    src.write_text('FIELD_DEGREE: 3\n')
    copy = log_configuration(src, tmp_path, 'dyform')
    assert copy.name.startswith('config_dyform_')
    assert copy.read_text() == 'FIELD_DEGREE: 3\n'
