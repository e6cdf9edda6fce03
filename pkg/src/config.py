"""
Configuration management for the verification toolkit
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

MAX_CAP = 15


class Config:
    """Configuration class for the verification runner"""

    # Truncation caps
    VERIFY_CAP = int(os.getenv('VERIFY_CAP', '6'))
    VERIFY_RECHECK_CAP = int(os.getenv('VERIFY_RECHECK_CAP', '8'))

    # Parallelism
    VERIFY_JOBS = int(os.getenv('VERIFY_JOBS', '1'))

    # Randomized property checks
    PROPERTY_SAMPLES = int(os.getenv('PROPERTY_SAMPLES', '1000'))
    RANDOM_SEED = int(os.getenv('RANDOM_SEED', '20240601'))

    # Logging Configuration
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('LOG_FILE', '')

    @classmethod
    def validate(cls):
        """Validate that caps, job and sample counts are in range"""
        problems = []
        for field_name, value in (('VERIFY_CAP', cls.VERIFY_CAP), ('VERIFY_RECHECK_CAP', cls.VERIFY_RECHECK_CAP)):
            if not 1 <= value <= MAX_CAP:
                problems.append(f"{field_name}={value} (must be 1..{MAX_CAP})")
        for field_name, value in (('VERIFY_JOBS', cls.VERIFY_JOBS), ('PROPERTY_SAMPLES', cls.PROPERTY_SAMPLES)):
            if value < 1:
                problems.append(f"{field_name}={value} (must be at least 1)")

        if problems:
            raise ValueError(f"Invalid configuration: {', '.join(problems)}")

        return True
