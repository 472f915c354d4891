"""Small cursor over whitespace-insensitive ASCII literals."""

from __future__ import annotations


class ParseError(ValueError):
	"""Literal could not be parsed; ``position`` indexes the original text."""

	def __init__(self, message: str, text: str, position: int):
		super().__init__(f"{message} at position {position}: {text!r}")
		self.message = message
		self.text = text
		self.position = position


class Reader:
	def __init__(self, text: str):
		self.text = text
		self.pos = 0

	def _skip(self) -> None:
		while self.pos < len(self.text) and self.text[self.pos].isspace():
			self.pos += 1

	def fail(self, message: str) -> ParseError:
		return ParseError(message, self.text, self.pos)

	def peek(self, token: str) -> bool:
		self._skip()
		return self.text.startswith(token, self.pos)

	def accept(self, token: str) -> bool:
		if self.peek(token):
			self.pos += len(token)
			return True
		return False

	def expect(self, token: str) -> None:
		if not self.accept(token):
			raise self.fail(f"expected {token!r}")

	def integer(self) -> int:
		self._skip()
		start = self.pos
		if self.pos < len(self.text) and self.text[self.pos] in "+-":
			self.pos += 1
		while self.pos < len(self.text) and self.text[self.pos].isdigit():
			self.pos += 1
		chunk = self.text[start:self.pos]
		if chunk in ("", "+", "-"):
			self.pos = start
			raise self.fail("expected an integer")
		return int(chunk)

	def end(self) -> None:
		self._skip()
		if self.pos != len(self.text):
			raise self.fail("unexpected trailing input")
