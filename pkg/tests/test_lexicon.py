from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, strategies as st

from lexitax.errors import DataFormatError
from lexitax.lexicon import (
    Dictionary,
    Sense,
    derive_genus,
    dictionary_counts,
    extract_genus,
    parse_bilingual,
    parse_sense_file,
    parse_wordlist,
    tokenize,
    write_bilingual,
    write_sense_file,
)


def _parse_lines(*lines: str) -> Dictionary:
    return parse_sense_file(io.StringIO("\n".join(lines) + "\n"))


SAMPLE = '{"headword":"vino","sense_id":"vino_1_1","pos":"n","definition":"Zumo de uvas fermentado"}'


class TestTokenize:
    def test_lowercases_and_splits(self):
        assert tokenize("Zumo de uvas fermentado") == ("zumo", "de", "uvas", "fermentado")

    def test_strips_edge_punctuation_keeps_inner(self):
        assert tokenize("(uvas), ¡co-producto!") == ("uvas", "co-producto")

    def test_keeps_accents(self):
        assert tokenize("Líquido añejo") == ("líquido", "añejo")

    def test_drops_pure_punctuation_tokens(self):
        assert tokenize("uno — dos") == ("uno", "dos")

    @given(st.lists(st.text(alphabet="abcáéñ", min_size=1, max_size=8), min_size=1, max_size=10))
    def test_joining_tokens_roundtrips(self, words):
        tokens = tokenize(" ".join(words))
        assert tokenize(" ".join(tokens)) == tokens


class TestParseSenseFile:
    def test_single_sense(self):
        d = _parse_lines(SAMPLE)
        sense = d.senses[0]
        assert sense.headword == "vino"
        assert sense.definition_tokens == ("zumo", "de", "uvas", "fermentado")
        assert sense.genus is None

    def test_empty_stream_rejected(self):
        with pytest.raises(DataFormatError, match="empty dictionary"):
            parse_sense_file(io.StringIO(""))

    def test_duplicate_sense_id_names_line(self):
        line2 = SAMPLE.replace('"vino"', '"otra"')
        with pytest.raises(DataFormatError, match="line 2"):
            _parse_lines(SAMPLE, line2)

    def test_malformed_json_names_line(self):
        with pytest.raises(DataFormatError, match="line 2"):
            _parse_lines(SAMPLE, "{not json")

    def test_missing_field_rejected(self):
        with pytest.raises(DataFormatError, match="definition"):
            _parse_lines('{"headword":"x","sense_id":"x_1","pos":"n"}')

    def test_blank_definition_rejected(self):
        with pytest.raises(DataFormatError, match="no word forms"):
            _parse_lines('{"headword":"x","sense_id":"x_1","pos":"n","definition":"¡¡"}')

    def test_explicit_genus_is_kept(self):
        d = _parse_lines(SAMPLE.replace("}", ',"genus":"zumo"}'))
        assert d.senses[0].genus == "zumo"

    def test_roundtrip(self, dictionary):
        buf = io.StringIO()
        write_sense_file(dictionary, buf)
        reparsed = parse_sense_file(io.StringIO(buf.getvalue()))
        assert reparsed.senses == dictionary.senses
        assert reparsed.index == dictionary.index


class TestParseBilingual:
    def test_targets_aggregate(self):
        b = parse_bilingual(io.StringIO("vino\twine\nvino\tvintage\n"))
        assert b.targets("vino") == {"wine", "vintage"}

    def test_duplicate_pairs_collapse(self):
        b = parse_bilingual(io.StringIO("vino\twine\nvino\twine\n"))
        assert b.targets("vino") == {"wine"}

    def test_blank_target_names_line(self):
        with pytest.raises(DataFormatError, match="line 2"):
            parse_bilingual(io.StringIO("vino\twine\npan\t\n"))

    def test_comments_and_blanks_ignored(self):
        b = parse_bilingual(io.StringIO("# cmt\n\nvino\twine\n"))
        assert b.targets("vino") == {"wine"}

    def test_roundtrip(self, bilingual):
        buf = io.StringIO()
        write_bilingual(bilingual, buf)
        assert parse_bilingual(io.StringIO(buf.getvalue())).entries == bilingual.entries


class TestExtractGenus:
    def test_first_content_token(self):
        assert extract_genus(["zumo", "de", "uvas"], {"de"}) == "zumo"

    def test_all_skipped_is_absent(self):
        assert extract_genus(["de", "la"], {"de", "la"}) is None

    def test_skips_leading_function_words(self):
        assert extract_genus(["parte", "de", "la", "planta"], {"de", "la"}) == "parte"

    @given(
        st.lists(st.sampled_from(["de", "la", "zumo", "pan", "uvas"]), max_size=8),
        st.sets(st.sampled_from(["de", "la", "zumo"])),
    )
    def test_result_absent_or_member_of_tokens(self, tokens, skip):
        genus = extract_genus(tokens, skip)
        assert genus is None or genus in tokens

    def test_derive_genus_respects_override(self):
        d = _parse_lines(
            '{"headword":"carne","sense_id":"c_1","pos":"n",'
            '"definition":"parte de animales","genus":"alimento"}'
        )
        derived = derive_genus(d, {"de"})
        assert derived.senses[0].genus == "alimento"

    def test_derive_genus_fills_missing(self):
        derived = derive_genus(_parse_lines(SAMPLE), {"de"})
        assert derived.senses[0].genus == "zumo"

    def test_derive_genus_leaves_unextractable_absent(self, stopwords):
        d = _parse_lines(
            '{"headword":"neutro","sense_id":"n_1","pos":"n","definition":"Ni lo uno ni lo otro"}'
        )
        assert derive_genus(d, stopwords).senses[0].genus is None


class TestCounts:
    def test_counts_match_brute_recount(self, dictionary):
        counts = dictionary_counts(dictionary)
        # independent recount with plain loops
        definitions = 0
        with_genus = 0
        genus_terms = set()
        headwords = set()
        for sense in dictionary.senses:
            definitions += 1
            headwords.add(sense.headword)
            if sense.genus is not None:
                with_genus += 1
                genus_terms.add(sense.genus)
        assert counts == {
            "definitions": definitions,
            "definitions_with_genus": with_genus,
            "genus_terms": len(genus_terms),
            "headwords": len(headwords),
        }

    def test_fixture_counts(self, dictionary):
        assert dictionary_counts(dictionary) == {
            "definitions": 53,
            "definitions_with_genus": 53,
            "genus_terms": 23,
            "headwords": 49,
        }


def test_wordlist_parsing():
    words = parse_wordlist(io.StringIO("# c\nde\nLa\n\n"))
    assert words == {"de", "la"}
