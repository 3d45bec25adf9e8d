"""HTML front end for post bodies: plain-text extraction and code-span capture.

Stack Overflow bodies are HTML where inline ``<code>`` spans mark candidate
API mentions and ``<pre><code>`` blocks mark multi-line usage samples.  Both
consumers here tolerate malformed markup: unclosed spans are flushed at end
of input.
"""

from __future__ import annotations

from html.parser import HTMLParser

# Elements whose boundaries end a sentence in the extracted text.
_BLOCK_TAGS = {
    "p", "li", "br", "h1", "h2", "h3", "h4", "h5", "h6",
    "div", "blockquote", "pre", "ul", "ol", "hr", "table", "tr",
}


class _TextExtractor(HTMLParser):
    """Strips markup, keeps inline code verbatim, drops <pre><code> content."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self._parts: list[str] = []
        self._pre_depth = 0
        self._code_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag == "pre":
            self._pre_depth += 1
        elif tag == "code":
            self._code_depth += 1
        if tag in _BLOCK_TAGS:
            self._parts.append("\n")

    def handle_endtag(self, tag):
        if tag == "pre":
            self._pre_depth = max(0, self._pre_depth - 1)
        elif tag == "code":
            self._code_depth = max(0, self._code_depth - 1)
        if tag in _BLOCK_TAGS:
            self._parts.append("\n")

    def handle_data(self, data):
        if self._pre_depth > 0 and self._code_depth > 0:
            return  # block code sample: not prose
        self._parts.append(data)

    def text(self):
        lines = []
        for line in "".join(self._parts).split("\n"):
            collapsed = " ".join(line.split())
            if collapsed:
                lines.append(collapsed)
        return "\n".join(lines)


def html_to_text(body_html: str) -> str:
    """Plain text of a post body.

    Inline ``<code>`` content survives verbatim, ``<pre><code>`` content is
    deleted, block-element boundaries become newlines, entities are decoded
    (decoded text is never re-parsed, so ``&lt;b&gt;`` stays literal).
    """
    parser = _TextExtractor()
    parser.feed(body_html)
    parser.close()
    return parser.text()


class _CodeCollector(HTMLParser):
    """Collects the text of every <code> element in document order."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.spans: list[tuple[str, bool]] = []  # (text, inside <pre>)
        self._pre_depth = 0
        self._code_depth = 0
        self._buf: list[str] = []
        self._in_pre = False

    def handle_starttag(self, tag, attrs):
        if tag == "pre":
            self._pre_depth += 1
        elif tag == "code":
            if self._code_depth == 0:
                self._buf = []
                self._in_pre = self._pre_depth > 0
            self._code_depth += 1

    def handle_endtag(self, tag):
        if tag == "pre":
            self._pre_depth = max(0, self._pre_depth - 1)
        elif tag == "code" and self._code_depth > 0:
            self._code_depth -= 1
            if self._code_depth == 0:
                self._flush()

    def handle_data(self, data):
        if self._code_depth > 0:
            self._buf.append(data)

    def close(self):
        super().close()
        if self._code_depth > 0:  # unclosed span: close at end of input
            self._code_depth = 0
            self._flush()

    def _flush(self):
        text = "".join(self._buf)
        if text:
            self.spans.append((text, self._in_pre))
        self._buf = []


def code_spans(body_html: str) -> list[tuple[str, bool]]:
    """All ``<code>`` span texts in document order, with an inside-pre flag."""
    parser = _CodeCollector()
    parser.feed(body_html)
    parser.close()
    return parser.spans
