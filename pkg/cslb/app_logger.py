# Standard Imports
import os
import logging

# Third-Party Imports
from dotenv import load_dotenv

# Load environmental variables to decide how the logger is configured
load_dotenv()
LOG = os.getenv('LOG', 'WARNING')
LOG_FILE = os.getenv('LOG_FILE')


# Define a custom formatter that logs the parent folder and filename
class CustomFormatter(logging.Formatter):
    def format(self, record):
        # Get the full pathname of the module where the log message was generated
        full_path = record.pathname

        # Extract the filename and its parent folder
        filename = os.path.basename(full_path)
        parent_folder = os.path.basename(os.path.dirname(full_path))

        record.custom_filepath = f"{parent_folder}/{filename}"

        return super().format(record)


logger = logging.getLogger('cslb')

if LOG.upper() in ('OFF', 'FALSE', '0', 'NONE'):
    # Disable logging for the whole package
    logger.disabled = True

else:
    logger.setLevel(getattr(logging, LOG.upper(), logging.WARNING))

    # Create a log format with the custom filepath
    formatter = CustomFormatter('%(asctime)s - %(custom_filepath)s:%(lineno)d - %(levelname)s - %(message)s')

    # Console handler always, file handler only when a path is configured
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if LOG_FILE:
        file_handler = logging.FileHandler(LOG_FILE)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)


def set_level(level: int):
    """Change the package log level at runtime (used by the CLI flags)."""
    logger.setLevel(level)
