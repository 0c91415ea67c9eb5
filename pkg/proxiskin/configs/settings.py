from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
        env_file=".env",
        env_prefix="PROXISKIN_",
    )

    project_name: str = Field(
        default="proxiskin",
        description="Project name",
    )
    version: str = Field(
        default="0.3.0",
        description="Project version",
    )
    description: str = Field(
        default="Procedural capacitive proximity skin generator and simulator",
        description="Project description",
    )
    debug: bool = Field(
        default=False,
        description="Enable debug logging",
    )
    output_dir: str = Field(
        default="runs",
        description="Default directory for stage artifacts",
    )
    config_path: str = Field(
        default="demo/config.json",
        description="Pipeline config used when --config is not given",
    )


# Create a single instance of Settings
_settings = Settings()


def get_settings() -> Settings:
    """
    Returns the settings instance.

    Returns:
        Settings: The application settings instance
    """
    return _settings
