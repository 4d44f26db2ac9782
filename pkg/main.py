import sys

from loguru import logger

from src.cli import run_cli
from src.core import config

FORMAT = "<red>[COPULA]</red> <green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>"

logger.remove()
logger.add(
    config.LOG_PATH,
    rotation="10 MB",
    format=FORMAT,
    level=config.LOG_LEVEL,
)

logger.add(
    sys.stderr,
    format=FORMAT,
    level=config.LOG_LEVEL,
)


def main() -> int:
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    code = 1
    try:
        code = main()

    except KeyboardInterrupt:
        logger.info("Программа остановлена пользователем")

    except Exception as e:
        logger.critical(f"ОШИБКА: {e}")
        raise

    finally:
        logger.info("Выход из программы...")

    sys.exit(code)
