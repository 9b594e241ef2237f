"""fishbit: respiratory frequency and activity from operculum-mounted accelerometers."""

from fishbit.constants import APP_VERSION

__version__ = APP_VERSION
