"""postdraft: interactive reverse-outline summarization workbench."""

__version__ = "0.1.0"
