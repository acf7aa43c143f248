from .settings import CensusConfig, PrecisionSettings, SieveSettings, VerifySettings
