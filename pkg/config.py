"""
Configuration module for the A-loop engine.
Loads environment variables and provides configuration classes.
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Base configuration class."""

    # Catalog storage
    CATALOG_DIR = os.getenv('ALOOP_CATALOG_DIR', 'catalog')

    # Worker pool
    JOBS = int(os.getenv('ALOOP_JOBS', '1'))

    # Logging
    LOG_LEVEL = os.getenv('ALOOP_LOG_LEVEL', 'INFO')

    # Search limits
    ORBIT_LIMIT = int(os.getenv('ALOOP_ORBIT_LIMIT', str(2 ** 24)))
    MLT_LIMIT = int(os.getenv('ALOOP_MLT_LIMIT', '128'))


class DevelopmentConfig(Config):
    """Development environment configuration."""
    DEBUG = True
    LOG_LEVEL = os.getenv('ALOOP_LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Configuration used by the test suite."""
    DEBUG = False
    JOBS = 1
    LOG_LEVEL = 'WARNING'
    MLT_LIMIT = 64


class ProductionConfig(Config):
    """Long batch runs (order 32, p = 7)."""
    DEBUG = False


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}
