"""Config data."""

from pydantic_settings import BaseSettings, SettingsConfigDict

TOOL_VERSION = "0.1.0"

# порядок группы Вейля E7
E7_WEYL_ORDER = 2903040


class AnalyzerConfig(BaseSettings):
    """Analyzer knobs: sampling, caps and parallelism."""

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="PVS_", extra="allow"
    )

    SEED: int = 1729
    TRIALS: int = 32
    HEIGHTS: list[int] = [10, 100, 1000]
    MAX_WEIGHTS: int = 24
    JOBS: int = 1
    LOG_LEVEL: str = "INFO"
    WEYL_ORDER_LIMIT: int = E7_WEYL_ORDER
    WEYL_RANK_LIMIT: int = 7

    @property
    def sampling(self) -> tuple[int, tuple[int, ...], int]:
        """Trials, heights and seed used by regularity sampling."""
        return self.TRIALS, tuple(self.HEIGHTS), self.SEED


analyzer_config = AnalyzerConfig()
