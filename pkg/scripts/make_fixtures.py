#!/usr/bin/env python3
"""Regenerate the fixture corpus, pages, images, and mock rule files.

Everything under fixtures/ is deterministic output of this script; run it
after changing fixture content and commit the results.
"""

from __future__ import annotations

import io
import json
import sys
from pathlib import Path

from PIL import Image

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fivepillars.corpus import assign_splits, save_corpus  # noqa: E402
from fivepillars.types import (  # noqa: E402
    CaseResult,
    ClaimedContext,
    DateValue,
    ImageCase,
    LocationValue,
    PillarAnswers,
)
from fivepillars.util import canonical_json, sha256_hex  # noqa: E402

FIX = ROOT / "fixtures"


# --------------------------------------------------------------- images

def make_png(color, accent=None) -> bytes:
    img = Image.new("RGB", (16, 16), color)
    if accent:
        for i in range(16):
            img.putpixel((i, i), accent)
            img.putpixel((15 - i, i), accent)
    out = io.BytesIO()
    img.save(out, format="PNG")
    return out.getvalue()


IMAGES = {
    "case-01": make_png((200, 40, 40)),
    "case-02": make_png((40, 200, 40)),
    "case-03": make_png((40, 40, 200)),
    "case-04": make_png((200, 200, 40), accent=(0, 0, 0)),
    "case-05": make_png((40, 200, 200)),
    "case-06": make_png((200, 40, 200)),
    "case-07": make_png((120, 120, 120)),
    "case-08": make_png((250, 150, 50)),
    "case-09": make_png((50, 150, 250)),
    "case-10": make_png((150, 250, 50), accent=(255, 0, 0)),
    "case-10-original": make_png((150, 250, 50)),
    "case-11": make_png((90, 60, 30)),
    "case-12": make_png((30, 60, 90)),
}


# --------------------------------------------------------------- corpus

def loc(text, gid=None):
    return LocationValue(text=text, gazetteer_id=gid)


CASES = [
    ImageCase(
        id="case-01", image_ref="images/case-01.png",
        fc_article_url="https://factly.example.in/photo-nairobi-protest",
        fc_publication_date=DateValue(2020, 3, 10),
        claimed=ClaimedContext(claimed_date=DateValue(2020, 3, 1), claimed_location="Lagos",
                               claimant="Twitter user"),
        gold=PillarAnswers(provenance="Yes", source="Getty Images",
                           date=(DateValue(2019, 5, 4),),
                           location=(loc("Nairobi", "g58"),),
                           motivation="To document a protest in downtown Nairobi"),
        image_type="out_of_context", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-02", image_ref="images/case-02.png",
        fc_article_url="https://factly.example.in/image-mumbai-flood",
        fc_publication_date=DateValue(2020, 11, 5),
        claimed=ClaimedContext(claimed_location="Chennai"),
        gold=PillarAnswers(provenance="Yes", source="Reuters",
                           date=(DateValue(2018, 11, 20),),
                           location=(loc("Mumbai", "g59"),),
                           motivation="To report on local flooding"),
        image_type="out_of_context", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-03", image_ref="images/case-03.png",
        fc_article_url="https://pesacheck.example.org/photo-paris-festival",
        fc_publication_date=DateValue(2021, 4, 22),
        gold=PillarAnswers(provenance="Unknown",
                           date=(DateValue(2015),),
                           location=(loc("Paris", "g56"),),
                           motivation="To promote a music festival"),
        image_type="fake", verification_strategies={"keyword_search"},
    ),
    ImageCase(
        id="case-04", image_ref="images/case-04.png",
        fc_article_url="https://factly.example.in/picture-london-marathon",
        fc_publication_date=DateValue(2021, 9, 14),
        gold=PillarAnswers(provenance="Yes", source="AP",
                           date=(DateValue(2016, 7, 1),),
                           location=(loc("London", "g57"),),
                           motivation="To cover a marathon"),
        image_type="manipulated", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-05", image_ref="images/case-05.png",
        fc_article_url="https://pesacheck.example.org/photo-composite-rally",
        fc_publication_date=DateValue(2022, 1, 15),
        gold=PillarAnswers(provenance="Yes", source="AFP",
                           date=(DateValue(2021, 8, 14), DateValue(2021, 8, 15)),
                           location=(loc("Juba", "g62"),),
                           motivation="To document two days of a rally"),
        image_type="out_of_context", verification_strategies={"reverse_image_search", "geolocation"},
    ),
    ImageCase(
        id="case-06", image_ref="images/case-06.png",
        fc_article_url="https://factly.example.in/image-berlin-snow",
        fc_publication_date=DateValue(2022, 5, 31),
        gold=PillarAnswers(provenance="No", source="Twitter user",
                           date=(DateValue(2022, 2, 2),),
                           location=(loc("Berlin", "g65"),),
                           motivation="To share a snowstorm photo"),
        image_type="true", verification_strategies={"other"},
    ),
    ImageCase(
        id="case-07", image_ref="images/case-07.png",
        fc_article_url="https://pesacheck.example.org/photo-chicago-election",
        fc_publication_date=DateValue(2022, 6, 1),
        gold=PillarAnswers(provenance="Yes", source="BBC",
                           date=(DateValue(2020, 6, 10),),
                           location=(loc("Chicago", "g50"),),
                           motivation="To report election news"),
        image_type="out_of_context", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-08", image_ref="images/case-08.png",
        fc_article_url="https://factly.example.in/photo-typhoon-plane",
        fc_publication_date=DateValue(2022, 10, 5),
        claimed=ClaimedContext(claimed_date=DateValue(2022, 9, 20), claimed_location="Odisha",
                               claimant="Facebook user",
                               claimant_motivation="To attribute the scene to a recent storm"),
        gold=PillarAnswers(provenance="Yes", source="Reuters",
                           date=(DateValue(2013, 8, 17),),
                           location=(loc("Manila", "g60"), loc("Philippines", "g15")),
                           motivation="To document typhoon relief efforts in the city"),
        image_type="out_of_context", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-09", image_ref="images/case-09.png",
        fc_article_url="https://pesacheck.example.org/image-chicago-festival",
        fc_publication_date=DateValue(2023, 1, 1),
        gold=PillarAnswers(provenance="Yes", source="Getty Images",
                           date=(DateValue(2021),),
                           location=(loc("Chicago", "g50"),),
                           motivation="To cover a street festival downtown"),
        image_type="out_of_context", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-10", image_ref="images/case-10.png",
        original_image_ref="images/case-10-original.png",
        fc_article_url="https://factly.example.in/photo-parade-edited",
        fc_publication_date=DateValue(2023, 3, 18),
        gold=PillarAnswers(provenance="Yes", source="EPA",
                           date=(DateValue(2018, 6, 1),),
                           location=(loc("Kyiv", "g63"),),
                           motivation="To report on a military parade"),
        image_type="manipulated", verification_strategies={"reverse_image_search"},
    ),
    ImageCase(
        id="case-11", image_ref="images/case-11.png",
        fc_article_url="https://pesacheck.example.org/picture-bushfire",
        fc_publication_date=DateValue(2023, 7, 30),
        gold=PillarAnswers(provenance="Yes", source="AP",
                           date=(DateValue(2019, 3, 5),),
                           location=(loc("Sydney", "g64"),),
                           motivation="To capture a bushfire aftermath"),
        image_type="out_of_context", verification_strategies={"reverse_image_search", "geolocation"},
    ),
    ImageCase(
        id="case-12", image_ref="images/case-12.png",
        fc_article_url="https://factly.example.in/image-holiday-market",
        fc_publication_date=DateValue(2023, 12, 28),
        gold=PillarAnswers(provenance="Yes", source="Facebook user",
                           date=(DateValue(2020, 12, 25),),
                           location=(loc("Austin", "g53"),),
                           motivation="To share a holiday market photo"),
        image_type="out_of_context", verification_strategies={"keyword_search"},
    ),
]


# ------------------------------------------------------------ gazetteer

GAZETTEER = [
    # id, name, parent, lat, lon, feature_class
    ("g1", "World", "", 0.0, 0.0, "planet"),
    ("g10", "USA", "g1", 39.8283, -98.5795, "country"),
    ("g11", "France", "g1", 46.2276, 2.2137, "country"),
    ("g12", "UK", "g1", 55.3781, -3.4360, "country"),
    ("g13", "Kenya", "g1", -0.0236, 37.9062, "country"),
    ("g14", "India", "g1", 20.5937, 78.9629, "country"),
    ("g15", "Philippines", "g1", 12.8797, 121.7740, "country"),
    ("g16", "Ethiopia", "g1", 9.1450, 40.4897, "country"),
    ("g17", "South Sudan", "g1", 6.8770, 31.3070, "country"),
    ("g18", "Ukraine", "g1", 48.3794, 31.1656, "country"),
    ("g19", "Australia", "g1", -25.2744, 133.7751, "country"),
    ("g20", "Germany", "g1", 51.1657, 10.4515, "country"),
    ("g21", "Brazil", "g1", -14.2350, -51.9253, "country"),
    ("g22", "Canada", "g1", 56.1304, -106.3468, "country"),
    ("g23", "Spain", "g1", 40.4637, -3.7492, "country"),
    ("g24", "Italy", "g1", 41.8719, 12.5674, "country"),
    ("g30", "Illinois", "g10", 40.6331, -89.3985, "region"),
    ("g31", "Texas", "g10", 31.9686, -99.9018, "region"),
    ("g32", "California", "g10", 36.7783, -119.4179, "region"),
    ("g33", "Missouri", "g10", 37.9643, -91.8318, "region"),
    ("g34", "Ile-de-France", "g11", 48.8499, 2.6370, "region"),
    ("g35", "Greater London", "g12", 51.4310, -0.0936, "region"),
    ("g36", "Nairobi County", "g13", -1.3032, 36.8474, "region"),
    ("g37", "Maharashtra", "g14", 19.7515, 75.7139, "region"),
    ("g38", "Metro Manila", "g15", 14.6091, 121.0223, "region"),
    ("g39", "Tigray", "g16", 14.0323, 38.3166, "region"),
    ("g40", "Central Equatoria", "g17", 4.6144, 31.2626, "region"),
    ("g41", "Kyiv Oblast", "g18", 50.0530, 30.7667, "region"),
    ("g42", "New South Wales", "g19", -31.2532, 146.9211, "region"),
    ("g43", "Brandenburg", "g20", 52.4125, 12.5316, "region"),
    ("g50", "Chicago", "g30", 41.8781, -87.6298, "city"),
    ("g51", "Springfield", "g30", 39.7817, -89.6501, "city"),
    ("g52", "Springfield", "g33", 37.2090, -93.2923, "city"),
    ("g53", "Austin", "g31", 30.2672, -97.7431, "city"),
    ("g54", "Houston", "g31", 29.7604, -95.3698, "city"),
    ("g55", "Los Angeles", "g32", 34.0522, -118.2437, "city"),
    ("g56", "Paris", "g34", 48.8566, 2.3522, "city"),
    ("g57", "London", "g35", 51.5074, -0.1278, "city"),
    ("g58", "Nairobi", "g36", -1.2921, 36.8219, "city"),
    ("g59", "Mumbai", "g37", 19.0760, 72.8777, "city"),
    ("g60", "Manila", "g38", 14.5995, 120.9842, "city"),
    ("g61", "Mekelle", "g39", 13.4967, 39.4697, "city"),
    ("g62", "Juba", "g40", 4.8594, 31.5713, "city"),
    ("g63", "Kyiv", "g41", 50.4501, 30.5234, "city"),
    ("g64", "Sydney", "g42", -33.8688, 151.2093, "city"),
    ("g65", "Berlin", "g20", 52.5200, 13.4050, "city"),
    ("g66", "Dallas", "g31", 32.7767, -96.7970, "city"),
    ("g67", "Marseille", "g11", 43.2965, 5.3698, "city"),
    ("g68", "Kisumu", "g13", -0.0917, 34.7680, "city"),
    ("g69", "Sao Paulo", "g21", -23.5505, -46.6333, "city"),
]


# ----------------------------------------------------------- html pages

def page(title, date_iso, paragraphs, *, sitename="Example News", author=None,
         description=None, images=(), lang="en"):
    metas = [f'<meta property="og:title" content="{title}">',
             f'<meta property="og:site_name" content="{sitename}">']
    if date_iso:
        metas.append(f'<meta property="article:published_time" content="{date_iso}T08:00:00Z">')
    if author:
        metas.append(f'<meta name="author" content="{author}">')
    if description:
        metas.append(f'<meta name="description" content="{description}">')
    body = "\n".join(f"    <p>{p}</p>" for p in paragraphs)
    figures = "\n".join(
        f'    <figure><img src="{src}" alt="{alt}"><figcaption>{alt}</figcaption></figure>'
        for src, alt in images
    )
    return f"""<!DOCTYPE html>
<html lang="{lang}">
<head>
  <title>{title}</title>
  {chr(10).join('  ' + m for m in metas)}
</head>
<body>
  <nav><a href="/">Home</a> | <a href="/about">About</a></nav>
  <article>
    <h1>{title}</h1>
{figures}
{body}
  </article>
  <footer>Contact us | Subscribe to the newsletter</footer>
</body>
</html>
"""


EV08A_PARAGRAPHS = [
    "EVMARK-08A Reuters photographers joined a relief convoy in Manila, Philippines after the typhoon.",
    "The agency caption records the photo as taken 2013-08-17, widely reprinted as August 17, 2013.",
    "Editors said the goal was to document typhoon relief efforts in the city of Tacloban and beyond.",
]

PAGES = {
    # case-08 evidence
    "https://news.example.com/typhoon-photo": page(
        "Relief convoy photo shared worldwide", "2014-02-01", EV08A_PARAGRAPHS,
        author="Desk Staff", description="How one relief convoy photo travelled",
    ),
    "https://archive.example.org/relief-gallery": page(
        "Relief gallery", "2013-09-30",
        ["EVMARK-08B Our gallery collects relief photos from Manila taken late 2013."],
        sitename="Archive Org Example",
    ),
    "https://blog.example.net/old-post": page(
        "Weekend notes", None,
        ["EVMARK-08C A personal note about gardening and weekend cooking recipes."],
        sitename="Personal Blog",
    ),
    "https://factly.in/fact-check-typhoon": page(
        "Fact check: typhoon photo", "2022-09-29",
        ["This plane photo does not show what the post claims."],
        sitename="Factly",
    ),
    # case-09 evidence
    "https://daily.example.com/festival-recap": page(
        "Street festival recap", "2021-07-09",
        ["EVMARK-09A Getty Images covered the street festival downtown across Chicago in 2021.",
         "Wicker Market vendors said the recap photos capture the busiest weekend."],
    ),
    "https://late.example.com/roundup-2023": page(
        "Mid-year roundup", "2023-06-01",
        ["A roundup of festival pictures published mid 2023."],
    ),
    "https://media.example.org/photo-essay": page(
        "Photo essay", None,
        ["EVMARK-09B An essay of city pictures without clear dates."],
    ),
    # case-10 first pass (manipulated image)
    "https://viral.example.com/parade-edit": page(
        "Edited parade photo spreads", "2019-04-11",
        ["EVMARK-10E The Khreshchatyk-edit version spread online years after the parade.",
         "Observers noted the edited banner in the Kyiv scene."],
        images=[("https://img.example.com/case-10-original.png", "The original unaltered parade photo")],
    ),
    "https://social.example.net/shared-copy": page(
        "Shared copy of the parade image", "2020-10-01",
        ["EVMARK-10F Another Khreshchatyk-edit copy shared on social media."],
        images=[("https://img.example.com/social-copy.png", "Shared copy")],
    ),
    # case-10 second pass (original image)
    "https://archive.example.org/parade-2018": page(
        "Military parade coverage", "2018-06-02",
        ["EVMARK-10G EPA photographed the Khreshchatyk-orig military parade in Kyiv.",
         "The caption dates the frame to June 1, 2018 and credits the agency pool.",
         "The assignment was to report on a military parade along the main avenue."],
    ),
    "https://news.example.com/kyiv-parade": page(
        "Kyiv parade notes", "2018-06-03",
        ["EVMARK-10H Khreshchatyk-orig rehearsal notes from Kyiv the same week."],
    ),
    # case-11 evidence
    "https://news.example.com/bushfire-story": page(
        "Bushfire aftermath story", "2019-03-06",
        ["EVMARK-11A AP documented the Blue Mountains bushfire aftermath near Sydney.",
         "The frame is dated 5 March 2019 in the wire caption."],
    ),
    "https://pics.example.org/gallery-11": page(
        "Gallery", None,
        ["EVMARK-11B Assorted landscape pictures from the Blue Mountains region."],
    ),
    # case-12 evidence (all filtered out)
    "https://future.example.com/post": page(
        "Holiday market photo", "2024-01-10",
        ["A market photo published after the fact-check."],
    ),
    "https://pesacheck.org/some-check": page(
        "Fact check: market photo", "2023-11-02",
        ["Another organization's fact-check of the same market photo."],
        sitename="PesaCheck",
    ),
    # image bytes served over HTTP for the substituted original
    "https://img.example.com/case-10-original.png": None,  # special-cased below
}


# fact-check articles for the dataset builder
FC_PAGES = {
    "https://factly.example.in/photo-bridge-collapse": page(
        "Old photo shared as recent bridge collapse", "2021-06-10",
        ["BRIDGE-MARKER A reverse image search shows the bridge photo is from Nairobi in 2021.",
         "The Daily Nation first published the photo of the collapsed bridge on January 5, 2021.",
         "The claim that this shows a collapse in Mombasa this year is false."],
        images=[("https://cdn.example.net/fc-a.png", "Collapsed bridge")],
        sitename="Factly Example",
    ),
    "https://factly.example.in/image-market-fire": page(
        "Market fire image is from another country", "2022-03-15",
        ["FIRE-MARKER A Yandex Images search revealed the fire photo was taken in Lagos in 2019.",
         "Reuters distributed the original frame to report on the market fire."],
        images=[("https://cdn.example.net/fc-b.png", "Market fire")],
        sitename="Factly Example",
    ),
    "https://factly.example.in/photo-inondation": page(
        "Une photo ancienne partagee comme une inondation recente", "2022-05-02",
        ["Les inondations montrees sur la photo datent de plusieurs annees.",
         "La publication pretend montrer une inondation recente, ce qui est faux.",
         "Une recherche montre que la photo provient d'un autre pays."],
        images=[("https://cdn.example.net/fc-c.png", "Inondation")],
        sitename="Factly Example", lang="fr",
    ),
    "https://pesacheck.example.org/photo-bridge-collapse-copy": page(
        "Old photo shared as recent bridge collapse", "2021-06-12",
        ["BRIDGE-MARKER A reverse image search shows the bridge photo is from Nairobi in 2021.",
         "Syndicated copy of a partner organization's article about the collapsed bridge."],
        images=[("https://cdn.example.net/fc-a.png", "Collapsed bridge")],
        sitename="PesaCheck Example",
    ),
    "https://pesacheck.example.org/picture-drought": page(
        "Drought picture is miscaptioned", "2022-08-20",
        ["DROUGHT-MARKER Geolocation of the hills shows the drought picture is from Kenya.",
         "The photographer posted the original picture to document the drought conditions."],
        images=[("https://cdn.example.net/fc-e.png", "Drought")],
        sitename="PesaCheck Example",
    ),
    "https://pesacheck.example.org/image-rally": page(
        "Rally image predates the election", "2023-05-05",
        ["RALLY-MARKER A reverse image search found the rally image was first posted in 2020.",
         "The image shows a rally in Juba and the photographer covered it for a local paper."],
        images=[("https://cdn.example.net/fc-f.png", "Rally")],
        sitename="PesaCheck Example",
    ),
}


# ------------------------------------------------------------- mocks

def sha(name: str) -> str:
    return sha256_hex(IMAGES[name])


def embed_rules():
    def v(*values):
        out = [0.0] * 8
        for i, value in enumerate(values):
            out[i] = value
        return out

    rules = [
        {"kind": "image_sha256", "match": sha("case-08"), "vector": v(1.0)},
        {"kind": "text_contains", "match": "EVMARK-08A", "vector": v(0.95, 0.3122)},
        {"kind": "text_contains", "match": "EVMARK-08B", "vector": v(0.8, 0.6)},
        {"kind": "text_contains", "match": "EVMARK-08C", "vector": v(0.2, 0.9798)},
        {"kind": "image_sha256", "match": sha("case-09"), "vector": v(0, 0, 1.0)},
        {"kind": "text_contains", "match": "EVMARK-09A", "vector": v(0, 0, 0.9, 0.4359)},
        {"kind": "text_contains", "match": "EVMARK-09B", "vector": v(0, 0, 0.5, 0.866)},
        {"kind": "image_sha256", "match": sha("case-10"), "vector": v(0, 0, 0, 0, 1.0)},
        {"kind": "text_contains", "match": "EVMARK-10E", "vector": v(0, 0, 0, 0, 0.9, 0.4359)},
        {"kind": "text_contains", "match": "EVMARK-10F", "vector": v(0, 0, 0, 0, 0.6, 0.8)},
        {"kind": "image_sha256", "match": sha("case-10-original"), "vector": v(0, 0, 0, 0, 0, 0, 1.0)},
        {"kind": "text_contains", "match": "EVMARK-10G", "vector": v(0, 0, 0, 0, 0, 0, 0.92, 0.3919)},
        {"kind": "text_contains", "match": "EVMARK-10H", "vector": v(0, 0, 0, 0, 0, 0, 0.7, 0.7141)},
        {"kind": "image_sha256", "match": sha("case-11"), "vector": v(0, 1.0)},
        {"kind": "text_contains", "match": "EVMARK-11A", "vector": v(0, 0.85, 0.5268)},
        {"kind": "text_contains", "match": "EVMARK-11B", "vector": v(0, 0.4, 0.9165)},
    ]
    return {"dim": 8, "rules": rules}


Q_SOURCE = "Who is the source/author of the image?"
Q_DATE = "When was the image taken?"
Q_LOCATION = "Where was the image taken?"
Q_MOTIVATION = "Why was the image taken?"


def chat_rules():
    rules = []

    def add(needles, answer, refused=False, image=None):
        rule = {"contains": needles, "answer": answer}
        if refused:
            rule["refused"] = True
        if image:
            rule["image_sha256"] = sha(image)
        rules.append(rule)

    # dataset-builder annotation answers (marker from the article body).
    # The repair rule must precede the plain rule: the repaired prompt
    # contains both the marker and the repair notice.
    add(["BRIDGE-MARKER"], json.dumps({
        "provenance": "Yes", "source": "Daily Nation", "date": ["January 5, 2021"],
        "location": ["Nairobi"], "motivation": "To document a collapsed bridge",
        "claimed_date": "2021", "claimed_location": "Mombasa", "claimant": "Facebook user",
        "claimant_motivation": "Not enough information", "image_type": "out_of_context"}))
    add(["FIRE-MARKER"], json.dumps({
        "provenance": "Yes", "source": "Reuters", "date": ["2019"],
        "location": ["Lagos"], "motivation": "To report on a market fire",
        "claimed_date": "Not enough information", "claimed_location": "Not enough information",
        "claimant": "Not enough information", "claimant_motivation": "Not enough information",
        "image_type": "out_of_context"}))
    add(["DROUGHT-MARKER"], json.dumps({
        "provenance": "Yes", "source": "Not enough information", "date": ["August 2022"],
        "location": ["Kenya"], "motivation": "To document the drought conditions",
        "claimed_date": "Not enough information", "claimed_location": "Not enough information",
        "claimant": "Not enough information", "claimant_motivation": "Not enough information",
        "image_type": "out_of_context"}))
    add(["RALLY-MARKER", "not valid JSON"], json.dumps({
        "provenance": "Yes", "source": "A local paper", "date": ["2020"],
        "location": ["Juba"], "motivation": "To cover a rally",
        "claimed_date": "2023", "claimed_location": "Not enough information",
        "claimant": "Not enough information", "claimant_motivation": "Not enough information",
        "image_type": "out_of_context"}))
    add(["RALLY-MARKER"], "Sure! Here are the extracted answers in plain prose.")
    add(["PLANE-MARKER"], json.dumps({
        "provenance": "Yes", "source": "US Air Force", "date": ["2013"],
        "location": ["Philippines"], "motivation": "To document an evacuation flight",
        "claimed_date": "2021", "claimed_location": "Kabul", "claimant": "Twitter user",
        "claimant_motivation": "To claim an airlift by another country",
        "image_type": "out_of_context"}))
    add(["SENTINEL-MARKER"], json.dumps({
        "provenance": "Not enough information", "source": "Not enough information",
        "date": "Not enough information", "location": "Not enough information",
        "motivation": "Not enough information", "claimed_date": "Not enough information",
        "claimed_location": "Not enough information", "claimant": "Not enough information",
        "claimant_motivation": "Not enough information", "image_type": "other"}))
    add(["LISTDATE-MARKER"], json.dumps({
        "provenance": "Yes", "source": "Not enough information", "date": ["2013", "2014"],
        "location": "Not enough information", "motivation": "Not enough information",
        "claimed_date": "Not enough information", "claimed_location": "Not enough information",
        "claimant": "Not enough information", "claimant_motivation": "Not enough information",
        "image_type": "out_of_context"}))

    # case-08: answers keyed on evidence markers (text modes) ...
    add([Q_DATE, "Tacloban"], "August 17, 2013")
    add([Q_SOURCE, "Tacloban"], "Reuters")
    add([Q_LOCATION, "Tacloban"], "Manila, Philippines")
    add([Q_MOTIVATION, "Tacloban"], "To document typhoon relief efforts in the city")
    # ... and on the image for image-only mode.
    add([Q_DATE], "August 17, 2013", image="case-08")
    add([Q_SOURCE], "Reuters", image="case-08")
    add([Q_LOCATION], "Manila, Philippines", image="case-08")
    add([Q_MOTIVATION], "To document typhoon relief efforts in the city", image="case-08")

    # case-09: deliberately wrong/abstaining answers.
    add([Q_DATE, "Wicker Market"], "2013")
    add([Q_SOURCE, "Wicker Market"], "Not enough information.")
    add([Q_LOCATION, "Wicker Market"], "USA")
    add([Q_MOTIVATION, "Wicker Market"], "To cover a festival")

    # case-10, first-pass evidence (edited image context).
    add([Q_DATE, "Khreshchatyk-edit"], "2019")
    add([Q_SOURCE, "Khreshchatyk-edit"], "Unknown")
    add([Q_LOCATION, "Khreshchatyk-edit"], "Kyiv")
    add([Q_MOTIVATION, "Khreshchatyk-edit"], "To celebrate")
    # case-10, original-image evidence.
    add([Q_DATE, "Khreshchatyk-orig"], "June 1, 2018")
    add([Q_SOURCE, "Khreshchatyk-orig"], "EPA")
    add([Q_LOCATION, "Khreshchatyk-orig"], "Kyiv, Ukraine")
    add([Q_MOTIVATION, "Khreshchatyk-orig"], "To report on a military parade")

    # case-11: one refusal.
    add([Q_DATE, "Blue Mountains"], "5 March 2019")
    add([Q_SOURCE, "Blue Mountains"], "AP")
    add([Q_LOCATION, "Blue Mountains"], "Sydney")
    add([Q_MOTIVATION, "Blue Mountains"], "", refused=True)

    return {"default": "Not enough information.", "rules": rules}


def ris_map():
    def entries(*urls):
        return [{"page_url": u, "match_kind": "full", "matched_image_urls": []} for u in urls]

    by_key = {
        "case-07": entries("https://daily.example.com/festival-recap"),
        "case-08": entries(
            "https://news.example.com/typhoon-photo",
            "https://archive.example.org/relief-gallery",
            "https://blog.example.net/old-post",
            "https://factly.in/fact-check-typhoon",
        ),
        "case-09": entries(
            "https://daily.example.com/festival-recap",
            "https://late.example.com/roundup-2023",
            "https://media.example.org/photo-essay",
        ),
        "case-10": entries(
            "https://viral.example.com/parade-edit",
            "https://social.example.net/shared-copy",
        ),
        "case-10-original": entries(
            "https://archive.example.org/parade-2018",
            "https://news.example.com/kyiv-parade",
        ),
        "case-11": entries(
            "https://news.example.com/bushfire-story",
            "https://pics.example.org/gallery-11",
        ),
        "case-12": entries(
            "https://future.example.com/post",
            "https://pesacheck.org/some-check",
        ),
    }
    by_sha = {sha(k): v for k, v in by_key.items() if k in IMAGES}
    return {"by_key": by_key, "by_sha256": by_sha}


def classify_map():
    return {
        "default": {"label": "non_manipulated", "score": 0.5},
        "by_sha256": {
            sha("case-04"): {"label": "manipulated", "score": 0.90},
            sha("case-10"): {"label": "manipulated", "score": 0.93},
        },
    }


def archive_index():
    def e(url, year):
        return {"url": url, "year": year}

    return {"domains": {
        "factly.example.in": [
            e("https://factly.example.in/photo-bridge-collapse", 2021),
            e("https://factly.example.in/photo-bridge-collapse", 2022),  # second snapshot
            e("https://factly.example.in/image-market-fire", 2022),
            e("https://factly.example.in/photo-inondation", 2022),
            e("https://factly.example.in/video-of-flood", 2022),  # no keyword
            e("https://factly.example.in/about-us", 2021),  # no keyword
        ],
        "pesacheck.example.org": [
            e("https://pesacheck.example.org/photo-bridge-collapse-copy", 2021),
            e("https://pesacheck.example.org/picture-drought", 2022),
            e("https://pesacheck.example.org/image-rally", 2023),
            e("https://pesacheck.example.org/election-live-blog", 2023),  # no keyword
        ],
        "unit.example.com": [
            e(f"https://unit.example.com/photo-story-{i}", 2020) for i in range(1, 5)
        ] + [
            e(f"https://unit.example.com/politics-live-{i}", 2020) for i in range(1, 7)
        ],
    }}


def pages_map():
    pages = {}
    for url in PAGES:
        if url == "https://img.example.com/case-10-original.png":
            pages[url] = {"file": "images/case-10-original.png", "status": 200}
        else:
            pages[url] = {"file": f"pages/{path_name(url)}", "status": 200}
    for url in FC_PAGES:
        pages[url] = {"file": f"pages/{path_name(url)}", "status": 200}
    return {"pages": pages}


def path_name(url: str) -> str:
    tail = url.split("//", 1)[1].replace("/", "__")
    return f"{tail}.html"


# ------------------------------------------------------------- goldens

# The extracted body opens with the article's h1 (headings are content).
GOLDEN_PROMPT = (
    "You are given online articles that used a certain image. "
    "Your task is to answer a question about the image.\n"
    "\n"
    "Evidence 1:\n"
    "Title: Relief convoy photo shared worldwide\n"
    "Date: 2014-02-01\n"
    "Text: Relief convoy photo shared worldwide "
    + " ".join(" ".join(EV08A_PARAGRAPHS).split()) + "\n"
    "\n"
    "Question: When was the image taken? Answer with one or more dates in a few words.\n"
    "Answer:"
)


def perfect_results(cases):
    rows = []
    for case in cases:
        if case.split is not None and case.split.value == "test":
            rows.append(CaseResult(case_id=case.id, predicted=case.gold))
    return rows


# ----------------------------------------------------------------- main

def main():
    for sub in ("images", "pages", "mock", "golden"):
        (FIX / sub).mkdir(parents=True, exist_ok=True)

    for name, data in IMAGES.items():
        (FIX / "images" / f"{name}.png").write_bytes(data)

    cases = assign_splits(CASES)
    save_corpus(cases, FIX / "corpus.jsonl")

    lines = ["# id\tname\tparent_id\tlat\tlon\tfeature_class"]
    for row in GAZETTEER:
        lines.append("\t".join(str(x) for x in row))
    (FIX / "gazetteer_fixture.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert len(GAZETTEER) == 50, len(GAZETTEER)

    for url, html in {**PAGES, **FC_PAGES}.items():
        if html is None:
            continue
        (FIX / "pages" / path_name(url)).write_text(html, encoding="utf-8")

    mock = FIX / "mock"
    (mock / "embed_rules.json").write_text(json.dumps(embed_rules(), indent=1) + "\n")
    (mock / "chat_rules.json").write_text(json.dumps(chat_rules(), indent=1) + "\n")
    (mock / "ris_map.json").write_text(json.dumps(ris_map(), indent=1) + "\n")
    (mock / "classify_map.json").write_text(json.dumps(classify_map(), indent=1) + "\n")
    (mock / "archive_index.json").write_text(json.dumps(archive_index(), indent=1) + "\n")
    (mock / "pages_map.json").write_text(json.dumps(pages_map(), indent=1) + "\n")

    (FIX / "golden" / "prompt_text_only_0shot.txt").write_text(GOLDEN_PROMPT, encoding="utf-8")
    rows = perfect_results(cases)
    (FIX / "golden" / "perfect_results.jsonl").write_text(
        "\n".join(canonical_json(r.to_dict()) for r in rows) + "\n", encoding="utf-8"
    )

    config = f"""# Example configuration for mock runs (paths relative to this file).
corpus: corpus.jsonl
gazetteer: gazetteer_fixture.tsv
fixtures_dir: .
cache_dir: ../.fivepillars-cache
out_dir: ../runs
modality: text_only
shots: 0
top_k: 3
ranking: embedding
manipulation_mode: no_detector
repeat_runs: 1
"""
    (FIX / "config_mock.yaml").write_text(config, encoding="utf-8")
    print(f"fixtures written to {FIX}")


if __name__ == "__main__":
    main()
