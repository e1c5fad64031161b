# Copyright (c) 2026 strokemark developers
# MIT License

"""
Document-level codec: character segmentation, message whitening,
repetition coding, codebook caching, and the document embedding and
extraction built on the per-glyph encoder/decoder.
"""

from .layout import segment  # noqa: F401
from .whitening import (whiten, unwhiten,  # noqa: F401
                        parse_message, format_message)
from .repetition import (assign_positions, majority_vote,  # noqa: F401
                         inject_flips)
from .codebook import Codebook  # noqa: F401
from .document import (embed_document, extract_document,  # noqa: F401
                       recover_message)
