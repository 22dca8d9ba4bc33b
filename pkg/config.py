from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    enumeration_bound: int = 2_000_000   # largest group enumerated element by element
    closure_bound: int = 1_000_000       # largest permutation closure
    support_bound: int = 600             # components, for brute-force Weyl groups
    matrix_check_bound: int = 12         # n up to which multiplicativity is checked exhaustively
    matrix_size_bound: int = 64          # largest n for an explicit matrix model
    max_concurrent: int = 4
    log_level: str = "WARNING"

    model_config = {"env_prefix": "GRADINGS_", "env_file": ".env"}


settings = Settings()
