"""Runtime settings for the generator"""

from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings

PACKAGE_DATA = Path(__file__).resolve().parent / "data"
REPO_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Generator settings"""

    LOG_LEVEL: str = "WARNING"

    # Grammar and lexicon
    SERBEST_GRAMMAR_DIR: Optional[str] = None  # defaults to the packaged data dir
    SERBEST_LEXICON: Optional[str] = None  # defaults to <grammar dir>/lexicon.tlx

    # Golden corpus
    SERBEST_CORPUS_DIR: Optional[str] = None

    # Batch realization
    SERBEST_WORKERS: int = 4

    @field_validator("SERBEST_WORKERS")
    @classmethod
    def check_workers(cls, v):
        if v < 1:
            raise ValueError("SERBEST_WORKERS must be at least 1")
        return v

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def upper_log_level(cls, v):
        return v.upper() if isinstance(v, str) else v

    def grammar_dir(self, override: Optional[str] = None) -> Path:
        chosen = override or self.SERBEST_GRAMMAR_DIR
        return Path(chosen) if chosen else PACKAGE_DATA

    def lexicon_path(self, override: Optional[str] = None, grammar_dir: Optional[Path] = None) -> Path:
        chosen = override or self.SERBEST_LEXICON
        if chosen:
            return Path(chosen)
        candidate = (grammar_dir or self.grammar_dir()) / "lexicon.tlx"
        return candidate if candidate.exists() else PACKAGE_DATA / "lexicon.tlx"

    def orthography_path(self, grammar_dir: Optional[Path] = None) -> Path:
        candidate = (grammar_dir or self.grammar_dir()) / "orthography.yaml"
        return candidate if candidate.exists() else PACKAGE_DATA / "orthography.yaml"

    def corpus_dir(self, override: Optional[str] = None) -> Path:
        chosen = override or self.SERBEST_CORPUS_DIR
        return Path(chosen) if chosen else REPO_ROOT / "corpus"

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore"
    }


# Global settings instance
settings = Settings()
