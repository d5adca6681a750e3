"""Leadership, topic and gender analytics for enterprise discussion networks."""

__version__ = "0.1.0"
