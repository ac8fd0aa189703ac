import logging

from model.analysis_config import AnalysisConfig
from dotenv import load_dotenv
import os

load_dotenv()


def load_analysis_config() -> AnalysisConfig:
    logger = logging.getLogger('loader')
    logger.debug('Loading analysis configs ...')

    config = AnalysisConfig()
    config.tolerance = float(os.environ.get('GAME_TOLERANCE', config.tolerance))
    config.resolution = int(os.environ.get('GAME_RESOLUTION', config.resolution))
    config.theta = float(os.environ.get('GAME_THETA', config.theta))
    config.alpha = float(os.environ.get('GAME_ALPHA', config.alpha))
    config.beta = float(os.environ.get('GAME_BETA', config.beta))
    config.threads = int(os.environ.get('GAME_THREADS', config.threads))
    config.seed = int(os.environ.get('GAME_SEED', config.seed))

    gammas = os.environ.get('GAME_GAMMAS')
    if gammas:
        config.gammas = [float(gamma) for gamma in gammas.split(',')]
    else:
        config.gammas = list(AnalysisConfig.gammas)

    return config


def load_app_version() -> str:
    return str(os.environ.get('VERSION', 'dev'))


def load_log_config_path() -> str:
    return str(os.environ.get('LOG_CONFIG', 'log-config.yml'))
