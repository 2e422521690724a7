from .structured import OFFSETS, STRUCTURED_SIZE, flatten
from .text import document_to_json, document_to_pyjson, render_text
from .pixels import render_pixels

__all__ = [
    "render_text", "document_to_json", "document_to_pyjson",
    "flatten", "OFFSETS", "STRUCTURED_SIZE", "render_pixels",
]
