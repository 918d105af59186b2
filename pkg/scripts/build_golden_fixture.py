#!/usr/bin/env python3
"""Materialize the annotated golden fixture corpus.

Each document below is a list of segments: plain strings are filler text
containing no non-standard words, and (type_name, text) pairs are
planted NSWs.  Segments are joined with single spaces, so annotation
offsets follow mechanically from the segment lists; the lexer plays no
part in producing them.

Writes tests/fixtures/golden/corpus/<category>/<file>.txt and
tests/fixtures/golden/annotations.tsv, then cross-checks that the lexer
reproduces the planted annotations exactly and that every taxonomy leaf
is planted at least twice.
"""

from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
OUT = REPO / "tests" / "fixtures" / "golden"

Seg = str | tuple[str, str]

DOCS: dict[str, list[Seg]] = {
    # ------------------------------------------------------------- official
    "official/doc01.txt": [
        "Gradski ured izdao je odluku pod oznakom",
        ("registration_number", "003-05/13-01/02"),
        "i urudžbenim brojem",
        ("registration_number", "2170-57-01-13-2"),
        "koja stupa na snagu dana",
        ("date_numeric", "15.10.2023."),
        "Prema",
        ("symbol", "§"),
        "ovoga propisa naknada iznosi tisuću",
        ("monetary_unit", "kn"),
        "po osobi i plaća se unaprijed.",
    ],
    "official/doc02.txt": [
        "Tvrtka Gradnja",
        ("abbrev_compound", "d.o.o."),
        "i društvo Mostovi",
        ("abbrev_compound", "d.d."),
        "sklopili su ugovor dana",
        ("date_numeric", "1. 5. 2024."),
        "Vrijednost radova plaća se u",
        ("currency_symbol", "€"),
        "ili u valuti",
        ("monetary_unit", "EUR"),
        "prema srednjem tečaju narodne banke.",
    ],
    "official/doc03.txt": [
        "Na javnome natječaju broj",
        ("registration_number", "004-08/21-03/07"),
        "pristigle su tri ponude. Vozilo registarske oznake",
        ("registration_number", "RI-123-AB"),
        "daje se u najam po cijeni od",
        ("monetary_unit", "250kn"),
        "po satu, a jamčevina iznosi",
        ("currency_symbol", "100€"),
        "po ponuditelju. Rok za prijavu je",
        ("ordinal_number", "15."),
        "dan u mjesecu.",
    ],
    "official/doc04.txt": [
        "Sjednica vijeća održana je",
        ("date_month_name", "1. veljače 2024."),
        "u velikoj vijećnici. Zapisnik potpisuje",
        ("abbrev_simple", "dr."),
        "Horvat, a ovjerava ga",
        ("abbrev_simple", "prof."),
        "Kovač. Prema",
        ("symbol", "§"),
        "statuta sve se odluke objavljuju na stranici",
        ("web_address", "www.grad.hr"),
        "svakoga tjedna.",
    ],
    "official/doc05.txt": [
        "Porezna stopa raste za",
        ("measurement_unit", "15%"),
        "od iduće godine, stoji u obrazloženju uz",
        ("abbrev_simple", "čl."),
        "prijedloga. Proračun broji",
        ("nominal_number", "2.272.446"),
        "stavki, od čega je odobreno",
        ("nominal_number", "42"),
        "zahtjeva. Isplate kreću od",
        ("date_month_name", "15. listopada 2023."),
        "prema redu prijave.",
    ],
    # ----------------------------------------------------------- literature
    "literature/doc01.txt": [
        "Pjesnik je živio u",
        ("roman_ordinal", "XIV."),
        "stoljeću, a svezak",
        ("roman_nominal", "III"),
        "njegovih djela donosi pjesme o moru. Najstariji rukopis nastaje oko",
        ("ordinal_number", "44."),
        "godine",
        ("abbrev_compound", "pr.n.e."),
        "prema predaji starih ljetopisa.",
    ],
    "literature/doc02.txt": [
        "Roman prati junaka kroz",
        ("roman_ordinal", "II."),
        "svjetski rat i kraj",
        ("roman_nominal", "XIX"),
        "stoljeća. Prijevod je opisan na",
        ("abbrev_simple", "str."),
        ("nominal_number", "215"),
        "drugoga izdanja, gdje",
        ("abbrev_no_period", "tzv"),
        "novi val dobiva pogovor.",
    ],
    "literature/doc03.txt": [
        "U zbirci se navodi ulomak",
        ("reference_biblical", "Iv 3,16"),
        "te stihovi iz",
        ("reference_biblical", "Post 1,1-2,3"),
        "kao moto. Pjesma nosi nadnevak",
        ("date_roman_month", "15. X. 2023."),
        "na rubu stranice rukopisa.",
    ],
    "literature/doc04.txt": [
        "Prezimena na",
        ("suffix", "-ić"),
        "i pridjevi na",
        ("suffix", "-ski"),
        "česti su u narodnim pjesmama, dok nastavak",
        ("suffix", "-ova"),
        "nalazimo u posvojnim oblicima. O tome piše",
        ("abbrev_simple", "npr."),
        "uvodna studija, poglavito uz psalam",
        ("reference_biblical", "Ps 23,1"),
        "u bilješkama.",
    ],
    "literature/doc05.txt": [
        "Ljetopis bilježi događaje od",
        ("date_roman_month", "3. V. 2021."),
        "kada je javno čitanje trajalo od",
        ("time_period", "10:00-12:00"),
        "u dvorani. Pripovijetka izlazi u broju za",
        ("date_incomplete", "listopad 2023."),
        "u nakladi od",
        ("nominal_number", "2023"),
        "primjeraka.",
    ],
    # ---------------------------------------------------------- informative
    "informative/doc01.txt": [
        "Vremenska prognoza za",
        ("date_incomplete", "15. ožujka"),
        "najavljuje jutarnju temperaturu od",
        ("decimal_negative", "-15,5"),
        "stupnjeva i najvišu dnevnu od",
        ("nominal_signed", "+15"),
        "stupnjeva. Vjetar nosi oblake brzinom",
        ("measurement_unit", "25km"),
        "na sat, a tlak pada na",
        ("decimal_positive", "0,75"),
        "bara prema jutarnjem izvješću.",
    ],
    "informative/doc02.txt": [
        "Vozni red vrijedi od",
        ("time_of_day", "10:30"),
        "do ponoći, a blagajne rade",
        ("time_period", "8-16h"),
        "radnim danom te",
        ("time_period", "9-17 h"),
        "subotom. Informacije se dobivaju na broju",
        ("phone_short", "555-123"),
        "ili na",
        ("phone_long", "051/213-456"),
        "svakoga dana.",
    ],
    "informative/doc03.txt": [
        "Autocesta",
        ("road_designation", "A1"),
        "zatvorena je kod čvora, obilazak ide državnom cestom",
        ("road_designation", "D8"),
        "ili pravcem",
        ("road_designation", "E65"),
        "prema jugu. Naplata na",
        ("traffic_abbrev", "AC"),
        "poskupljuje, a kolone su na",
        ("traffic_abbrev", "GP"),
        "prema susjednoj zemlji.",
    ],
    "informative/doc04.txt": [
        "Večerašnji program na",
        ("tv_show_label", "HRT2"),
        "donosi dokumentarac, dok",
        ("tv_show_label", "RTL2"),
        "prikazuje epizodu",
        ("tv_show_label", "S01E02"),
        "nove serije. Prijenos počinje u",
        ("time_of_day", "8:45:00"),
        "navečer, a najava traje",
        ("time_of_day", "2h"),
        "ukupno.",
    ],
    "informative/doc05.txt": [
        "Grad leži na",
        ("geo_coordinates", "45°20′N"),
        "i",
        ("geo_coordinates", "14°27′E"),
        "uz samu obalu. Pozivni centar radi na",
        ("phone_long", "+385 51 213 456"),
        "i na kratkome broju",
        ("phone_short", "213-4567"),
        "danonoćno. Željeznički most dug je",
        ("nominal_number", "215"),
        "metara.",
    ],
    # -------------------------------------------------------------- popular
    "popular/doc01.txt": [
        "Vidimo se sutra",
        ("emoticon", ":-)"),
        "napisala je, a on je odgovorio",
        ("emoticon", ";)"),
        "odmah zatim. Brat se nasmijao",
        ("argo_emoticon", "xD"),
        "i dodao",
        ("argo_emoticon", "^^"),
        "na kraju poruke.",
    ],
    "popular/doc02.txt": [
        "Stigao je",
        ("acronym", "SMS"),
        "iz agencije, a sadržaj",
        ("acronym_inflected", "SMS-a"),
        "nudi stan na broju",
        ("house_number", "12b"),
        "i garsonijeru na",
        ("house_number", "5a"),
        "u istoj ulici. Oglas je na",
        ("web_address", "www.oglasi.hr"),
        "ili upitom na",
        ("web_address", "ana.anic@primjer.hr"),
        "za više slika.",
    ],
    "popular/doc03.txt": [
        "Novi",
        ("acronym_special", "MP3"),
        "uređaj ima zaslon od",
        ("dimension", "3x4"),
        "palca i razlučivost",
        ("dimension", "1920×1080"),
        "točaka. Cijena pada za",
        ("measurement_unit", "15%"),
        "ovoga tjedna, a dostava iz",
        ("acronym_special", "BiH"),
        "traje tjedan dana.",
    ],
    "popular/doc04.txt": [
        "Recept traži",
        ("fraction_positive", "1/2"),
        "šalice brašna i",
        ("fraction_positive", "3/4"),
        "šalice mlijeka, uz pećnicu na",
        ("measurement_unit", "25°C"),
        "za dizanje tijesta. Smjesa se dijeli u omjeru",
        ("proportion", "2:3"),
        "prije pečenja, a gotov kolač teži nekoliko",
        ("measurement_unit", "kg"),
        "po kalupu.",
    ],
    "popular/doc05.txt": [
        "Pogledao me",
        ("argo_emoticon", "o.O"),
        "kad sam rekla da pratim horoskop",
        ("emoticon", ":D"),
        "svako jutro. Više o tome piše na stranici",
        ("web_address", "primjer.hr"),
        "gdje glazbu dijele kao",
        ("acronym_special", "G20"),
        "uslugu, a prijenos ide preko",
        ("acronym", "HRT"),
        "mreže uz zahvalu",
        ("acronym_inflected", "HRT-u"),
        "na podršci.",
    ],
    # ------------------------------------------------------------ educational
    "educational/doc01.txt": [
        "Učenici mjere pola, to jest",
        ("fraction_positive", "2/4"),
        "cjeline, a zatim računaju",
        ("fraction_negative", "-1/2"),
        "i",
        ("fraction_negative", "-2/3"),
        "na brojevnome pravcu. Zadatak traži mjerilo",
        ("proportion", "1:500"),
        "na zemljovidu i ploču od",
        ("dimension", "2 x 3"),
        "metra za crtanje.",
    ],
    "educational/doc02.txt": [
        "Formula",
        ("formula_math", "E=mc2"),
        "uči se uz jednadžbu",
        ("formula_math", "y=2x+1"),
        "i identitet",
        ("formula_math", "a+b=c"),
        "na ploči. Broj čestica u uzorku je oko",
        ("exponent", "10^3"),
        "dok svemir broji barem",
        ("exponent", "2e10"),
        "zvijezda po gruboj procjeni.",
    ],
    "educational/doc03.txt": [
        "Voda",
        ("formula_chemical", "H2O"),
        "i kiselina",
        ("formula_chemical", "H2SO4"),
        "obrađuju se u pokusu, kao i šećer",
        ("formula_chemical", "C6H12O6"),
        "iz biljaka. Željezo",
        ("chemical_element", "Fe"),
        "i klor",
        ("chemical_element", "Cl"),
        "stoje u tablici uz magnezij",
        ("chemical_element", "Mg"),
        "pri samome dnu.",
    ],
    "educational/doc04.txt": [
        "Prehrana traži",
        ("vitamin", "vitamin C"),
        "svakoga dana, uz",
        ("vitamin", "B12"),
        "iz mesa i dodatak",
        ("vitamin", "vitamina D"),
        "iz ribe. Obrok smije imati",
        ("decimal_positive", "15,5"),
        "grama masti na",
        ("nominal_number", "100"),
        "grama ukupne mase.",
    ],
    "educational/doc05.txt": [
        "Primjer ispisa daje funkcija",
        ("program_code", "main()"),
        "dok oznaka",
        ("program_code", "<div>"),
        "uokviruje sadržaj, a brojač",
        ("program_code", "i++"),
        "raste u petlji. Stranica prima",
        ("exponent", "10²"),
        "redaka, raspon vrijednosti je",
        ("nominal_interval", "10-20"),
        "po stupcu, uz kratice poput",
        ("abbrev_no_period", "itd"),
        "bez točke.",
    ],
    # ------------------------------------------------------------ scientific
    "scientific/doc01.txt": [
        "Uvodno poglavlje citira radove",
        ("reference_short", "[1]"),
        "i",
        ("reference_short", "[12]"),
        "te pregledni članak",
        ("reference_long", "[1, str. 33-45]"),
        "u cijelosti. Ostali izvori navedeni su kao",
        ("reference_long", "[2, 3]"),
        "i",
        ("reference_long", "[4-6]"),
        "na kraju rada.",
    ],
    "scientific/doc02.txt": [
        "Knjiga nosi oznaku",
        ("isdn_udk", "ISBN 978-0-262-03384-8"),
        "dok časopis ima",
        ("isdn_udk", "ISSN 1330-0067"),
        "u zaglavlju. Rad je razvrstan pod",
        ("isdn_udk", "UDK 004.85"),
        "u knjižnici, a recenzija je zaprimljena",
        ("date_numeric", "3.2.2021."),
        "prema evidenciji, vidi",
        ("enumeration_label", "Tablica 3."),
        "za potpun popis.",
    ],
    "scientific/doc03.txt": [
        "Uzorak sadrži",
        ("nominal_number", "1.234.567"),
        "jedinica, od čega",
        ("measurement_unit", "7%"),
        "otpada na šum, usporedi",
        ("enumeration_label", "Slika 2."),
        "za razdiobu. Mjerenja su rađena pri",
        ("measurement_unit", "25°C"),
        "u komori, uz odstupanje od",
        ("decimal_negative", "-0,5"),
        "posto, kako opisuje",
        ("enumeration_label", "Poglavlje 7."),
        "ove studije.",
    ],
    "scientific/doc04.txt": [
        "Brzina vjetra iskazuje se u",
        ("compound_unit", "km/h"),
        "dok se potrošnja mjeri u",
        ("compound_unit", "kWh"),
        "po ciklusu, a površina u",
        ("compound_unit", "m²"),
        "po uzorku. Vozilo u pokusu postiže",
        ("compound_unit", "130km/h"),
        "na ravnini, uz omjer obodne brzine od",
        ("decimal_positive", "3.14"),
        "prema izvješću",
        ("acronym_inflected", "UN-a"),
        "iz prošle godine.",
    ],
    "scientific/doc05.txt": [
        "Raspon mjerenja kreće se",
        ("interval", "10 - 20"),
        "jedinica, a u ponovljenome pokusu",
        ("interval", "7 - 9"),
        "jedinica po seriji. Temperatura varira",
        ("decimal_interval", "36,5-37,2"),
        "stupnjeva, odnosno",
        ("decimal_interval", "0,5 - 1,5"),
        "nakon smirivanja, kroz razdoblja",
        ("ordinal_interval", "3.-5."),
        "i",
        ("ordinal_interval", "10. - 12."),
        "mjeseca pokusa. Za godine",
        ("nominal_interval", "1995-1999"),
        "nema podataka, a odstupanje od",
        ("nominal_signed", "-40"),
        "jedinica zapisano je",
        ("unknown_type", "2023-10-15"),
        "i",
        ("unknown_type", "2024-01-31"),
        "u dnevniku, uz bilješku od",
        ("ordinal_number", "21."),
        "dana. Očitanje u",
        ("time_of_day", "16h"),
        "objavljeno je u broju za",
        ("date_incomplete", "siječanj 2020."),
        "a dežurstvo se javlja na",
        ("phone_long", "01/480-1111"),
        "uredovnim danom. Obilazak ide preko",
        ("traffic_abbrev", "DC"),
        "dionice, kako navodi",
        ("abbrev_no_period", "npr"),
        "i novija literatura.",
    ],
}


def build() -> tuple[dict[str, str], list[tuple[str, int, int, str, str]]]:
    texts: dict[str, str] = {}
    annotations: list[tuple[str, int, int, str, str]] = []
    for doc_id, segments in DOCS.items():
        parts: list[str] = []
        pos = 0
        for seg in segments:
            if parts:
                pos += 1  # joining space
            if isinstance(seg, tuple):
                type_name, text = seg
                annotations.append((doc_id, pos, pos + len(text), type_name, text))
                parts.append(text)
                pos += len(text)
            else:
                parts.append(seg)
                pos += len(seg)
        texts[doc_id] = " ".join(parts) + "\n"
    return texts, annotations


def main() -> int:
    sys.path.insert(0, str(REPO / "src"))
    from nswcat.corpus import LabeledDocument, tokenize
    from nswcat.lexer import extract_nsws, load_lexicon, load_rules
    from nswcat.taxonomy import load_taxonomy

    texts, annotations = build()

    taxonomy = load_taxonomy()
    lexicon = load_lexicon(None, taxonomy)
    rules = load_rules(None, taxonomy)

    counts = Counter(a[3] for a in annotations)
    missing = [t.name for t in taxonomy if counts[t.name] < 2]
    if missing:
        print(f"leaves with fewer than 2 planted occurrences: {missing}")
        return 1
    print(f"planted annotations: {len(annotations)} over {len(texts)} documents")

    failures = 0
    for doc_id, text in texts.items():
        doc = LabeledDocument(
            doc_id, text, doc_id.split("/")[0],
            len(tokenize(text, lexicon.abbreviation_forms())),
        )
        got = [
            (o.start, o.end, o.type.name, o.surface)
            for o in extract_nsws(doc, lexicon, rules)
        ]
        want = [
            (start, end, name, surf)
            for d, start, end, name, surf in annotations
            if d == doc_id
        ]
        if got != want:
            failures += 1
            print(f"== mismatch in {doc_id}")
            for item in want:
                if item not in got:
                    print(f"  planted but not found: {item}")
            for item in got:
                if item not in want:
                    print(f"  found but not planted: {item}")
    if failures:
        return 1

    corpus_dir = OUT / "corpus"
    for doc_id, text in texts.items():
        path = corpus_dir / doc_id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    lines = [
        f"{d}\t{s}\t{e}\t{t}\t{surf}"
        for d, s, e, t, surf in sorted(annotations, key=lambda a: (a[0], a[1]))
    ]
    (OUT / "annotations.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(texts)} documents and {len(annotations)} annotations under {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
