__pkgname__ = "strokemark"
__version__ = "0.1.0"
__date__ = "2026-10-18"
__author__ = "strokemark developers"
__author_email__ = "strokemark@users.noreply.github.com"
__license__ = "MIT"
__copyright__ = "Copyright (c) 2026 strokemark developers"
__url__ = "https://github.com/strokemark/strokemark"
__description__ = ("Structure-aware per-character watermarking "
                   "of document and glyph images")


import logging


# Set a default logging handler to avoid the "No handler found" warning
logging.getLogger(__name__).addHandler(logging.NullHandler())
