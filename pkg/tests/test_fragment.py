from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treedoc.errors import InvalidFragment, InvalidTitle
from treedoc.fragment import (
    canonicalize,
    element_names,
    fragment_hrefs,
    has_export_block,
    is_valid_fragment,
    parse_fragment,
    serialize_fragment,
    split_export,
    validate_title,
)

import randgen


class TestWhitelist:
    def test_allowed_elements_pass(self):
        markup = ('<p>a <b>b</b> <strong>c</strong> <i>d</i> <em>e</em> '
                  '<a href="https://x.test">f</a></p>'
                  '<ul><li>x</li></ul><ol><li>y</li></ol>'
                  '<div class="export"><p>z</p></div>')
        assert canonicalize(markup) == markup

    @pytest.mark.parametrize("markup", [
        "<script>alert(1)</script>",
        "<p><span>x</span></p>",
        "<img src='x'>",
        "<h1>x</h1>",
        "<br>",
    ])
    def test_off_whitelist_elements_rejected(self, markup):
        with pytest.raises(InvalidFragment):
            parse_fragment(markup)

    def test_paper_outline_shape_validates(self):
        # bold highlights inside list items must be accepted
        markup = "<ul><li><b>key</b> point</li></ul>"
        assert canonicalize(markup) == markup

    def test_sublist_inside_li(self):
        markup = "<ul><li>top<ul><li>sub</li></ul></li></ul>"
        assert canonicalize(markup) == markup


class TestAttributes:
    def test_a_requires_exactly_href(self):
        assert is_valid_fragment('<p><a href="https://x.test">x</a></p>')
        assert not is_valid_fragment("<p><a>x</a></p>")
        assert not is_valid_fragment('<p><a href="u" title="t">x</a></p>')
        assert not is_valid_fragment('<p><a target="_blank">x</a></p>')

    def test_div_requires_export_class(self):
        assert not is_valid_fragment("<div><p>x</p></div>")
        assert not is_valid_fragment('<div class="other"><p>x</p></div>')
        assert not is_valid_fragment('<div class="export" id="d"><p>x</p></div>')

    def test_plain_elements_take_no_attributes(self):
        assert not is_valid_fragment('<p class="x">y</p>')
        assert not is_valid_fragment('<b style="s">y</b>')

    @pytest.mark.parametrize("href", [
        "javascript:alert(1)",
        "JaVaScRiPt:alert(1)",
        " javascript:x",
        "java\nscript:x",
        "data:text/html,x",
        "vbscript:x",
    ])
    def test_dangerous_href_schemes_rejected(self, href):
        with pytest.raises(InvalidFragment):
            parse_fragment(f'<p><a href="{href}">x</a></p>')

    def test_href_escaping_round_trips(self):
        markup = '<p><a href="https://x.test/?a=1&amp;b=&quot;q&quot;">x</a></p>'
        assert canonicalize(markup) == markup


class TestExportBlock:
    def test_export_must_be_last(self):
        with pytest.raises(InvalidFragment):
            parse_fragment('<p>x</p><div class="export"><p>y</p></div><p>z</p>')

    def test_single_export_only(self):
        with pytest.raises(InvalidFragment):
            parse_fragment('<div class="export"><p>a</p></div>'
                           '<div class="export"><p>b</p></div>')

    def test_export_not_allowed_nested(self):
        with pytest.raises(InvalidFragment):
            parse_fragment('<div class="export"><div class="export"></div></div>')

    def test_trailing_whitespace_after_export_is_fine(self):
        markup = '<p>x</p><div class="export"><p>y</p></div>\n'
        assert canonicalize(markup) == '<p>x</p><div class="export"><p>y</p></div>'

    def test_split_export(self):
        non_export, payload = split_export(
            '<p>x</p><div class="export"><p>y</p></div>')
        assert non_export == "<p>x</p>"
        assert payload == "<p>y</p>"
        assert split_export("<p>x</p>") == ("<p>x</p>", None)
        assert split_export('<div class="export"></div>') == ("", "")
        assert has_export_block('<div class="export"></div>')


class TestStructure:
    @pytest.mark.parametrize("markup", [
        "<p>unclosed",
        "</p>",
        "<p><b>x</p></b>",
        "<ul>text</ul>",
        "<ul><p>x</p></ul>",
        "<p><p>x</p></p>",
        "<p><ul><li>x</li></ul></p>",
        "<li>loose item</li>",
        "<!-- c -->",
        "<!DOCTYPE html>",
    ])
    def test_malformed_markup_rejected(self, markup):
        with pytest.raises(InvalidFragment):
            parse_fragment(markup)

    def test_nesting_bomb_rejected(self):
        markup = "<b>" * 100 + "x" + "</b>" * 100
        with pytest.raises(InvalidFragment):
            parse_fragment(markup)

    def test_non_string_rejected(self):
        with pytest.raises(InvalidFragment):
            parse_fragment(None)


class TestCanonicalization:
    def test_interblock_whitespace_dropped(self):
        assert canonicalize("<p>a</p>\n  <p>b</p>\n") == "<p>a</p><p>b</p>"
        assert canonicalize("<ul>\n  <li>x</li>\n</ul>") == "<ul><li>x</li></ul>"

    def test_inline_whitespace_preserved(self):
        markup = "<p>a <b>b</b> <i>c</i></p>"
        assert canonicalize(markup) == markup
        # space between top-level inline elements is meaningful too
        assert canonicalize("<b>a</b> <i>b</i>") == "<b>a</b> <i>b</i>"

    def test_text_entities_escape_round_trip(self):
        assert canonicalize("<p>a &amp; b &lt; c</p>") == "<p>a &amp; b &lt; c</p>"
        assert canonicalize("<p>1 < 2</p>") == "<p>1 &lt; 2</p>"

    def test_bare_text_allowed_at_top_level(self):
        assert canonicalize("just text") == "just text"

    @settings(max_examples=200)
    @given(st.integers(0, 10 ** 9))
    def test_idempotent_on_random_fragments(self, seed):
        rng = random.Random(seed)
        markup = randgen.fragment(rng, messy=True)
        once = canonicalize(markup)
        assert canonicalize(once) == once
        assert serialize_fragment(parse_fragment(once)) == once


class TestHelpers:
    def test_element_names(self):
        assert element_names("<p>a <b>b</b></p><ul><li>c</li></ul>") == \
            {"p", "b", "ul", "li"}
        assert element_names("plain") == set()

    def test_fragment_hrefs_is_a_multiset(self):
        markup = ('<p><a href="u1">a</a> <a href="u1">b</a> '
                  '<a href="u2">c</a></p>')
        hrefs = fragment_hrefs(markup)
        assert hrefs["u1"] == 2
        assert hrefs["u2"] == 1


class TestTitles:
    def test_valid_titles(self):
        assert validate_title("A plain title") == "A plain title"
        assert validate_title("") == ""
        assert validate_title("x" * 200) == "x" * 200

    def test_too_long(self):
        with pytest.raises(InvalidTitle):
            validate_title("x" * 201)

    def test_control_characters_rejected(self):
        for bad in ("a\nb", "a\rb", "a\tb", "a\x00b"):
            with pytest.raises(InvalidTitle):
                validate_title(bad)

    def test_non_string_rejected(self):
        with pytest.raises(InvalidTitle):
            validate_title(42)
