"""Wide subalgebras of semisimple Lie algebras, computed exactly."""

__version__ = "0.1.0"
