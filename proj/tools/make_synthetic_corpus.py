#!/usr/bin/env python3
"""Generate the bundled synthetic tribology corpus (data/synthetic_corpus.csv).

The output is fully determined by the seed. It mixes clean records with the
affiliation problems the cleaning rules handle: secondary affiliations,
professional societies, mislabelled countries, institution-only strings,
country aliases and unresolvable text. A few duplicate ids, out-of-window
years, non-research document types and one malformed row are included.
"""
import argparse
import csv
import random

COUNTRIES = [
    # (name as written, weight)
    ("China", 24), ("United States", 12), ("Japan", 10), ("Germany", 6),
    ("United Kingdom", 4), ("India", 4), ("France", 4), ("South Korea", 3),
    ("Russian Federation", 3), ("Taiwan", 2), ("Turkey", 2), ("Iran", 2),
    ("Brazil", 2), ("Italy", 2), ("Spain", 2), ("Poland", 2), ("Canada", 2),
    ("Australia", 1), ("Singapore", 1), ("Malaysia", 1), ("Thailand", 1),
    ("Sweden", 1), ("Switzerland", 1), ("Netherlands", 1), ("Ukraine", 1),
    ("Czech Republic", 1), ("Egypt", 1), ("Mexico", 1), ("Argentina", 1),
    ("Colombia", 1), ("Indonesia", 1), ("Vietnam", 1), ("Pakistan", 1),
    ("South Africa", 1), ("Austria", 1), ("Belgium", 1), ("Finland", 1),
    ("Portugal", 1), ("Israel", 1), ("Chile", 1), ("Nigeria", 1),
    ("Bangladesh", 1), ("Saudi Arabia", 1), ("Greece", 1),
]
ALIASES = {"United States": ["USA", "U.S.A."], "United Kingdom": ["UK", "England"],
           "China": ["P.R. China", "PR China"], "South Korea": ["Korea", "Republic of Korea"],
           "Russian Federation": ["Russia"], "Vietnam": ["Viet Nam"]}
INSTITUTES = ["University of Technology", "Institute of Mechanics", "National Laboratory",
              "Department of Mechanical Engineering", "School of Materials Science",
              "Tribology Centre", "Research Institute of Surface Engineering"]
CITIES = ["Capital City", "Harbour Town", "Riverside", "Northfield", "Lakeside"]
SOCIETIES = ["American Ceramic Society, United States", "Society of Tribologists and Lubrication Engineers, United States",
             "Institution of Mechanical Engineers, United Kingdom", "Japanese Society of Tribologists, Japan"]
LOOKUPS = ["Toyota Motor Corporation", "Nissan Motor Co", "Robert Bosch GmbH", "SKF Engineering and Research Centre",
           "General Motors R&D Center", "Infineum UK"]
SUBJECTS = [("Engineering", 10), ("Materials Science", 8), ("Physics and Astronomy", 4),
            ("Chemistry", 3), ("Chemical Engineering", 2), ("Energy", 1), ("Computer Science", 1),
            ("Mathematics", 1), ("Earth and Planetary Sciences", 1), ("Medicine", 1),
            ("Biochemistry, Genetics and Molecular Biology", 1)]
SURNAMES = ["Li", "Wang", "Smith", "Tanaka", "Mueller", "Brown", "Kumar", "Dubois", "Kim", "Ivanov",
            "Chen", "Sato", "Garcia", "Rossi", "Nowak", "Silva", "Yilmaz", "Ahmadi", "Nguyen", "Lopez"]


def pick(rng, weighted):
    total = sum(w for _, w in weighted)
    r = rng.uniform(0, total)
    acc = 0.0
    for item, w in weighted:
        acc += w
        if r <= acc:
            return item
    return weighted[-1][0]


def affiliation(rng, country):
    text = country
    if country in ALIASES and rng.random() < 0.3:
        text = rng.choice(ALIASES[country])
    return f"{rng.choice(INSTITUTES)}, {rng.choice(CITIES)}, {text}"


def author_field(rng, name, country, messy):
    affs = [affiliation(rng, country)]
    if messy == "secondary":
        affs.append(affiliation(rng, pick(rng, COUNTRIES)))
    elif messy == "society_first":
        affs.insert(0, rng.choice(SOCIETIES))
    elif messy == "society_after":
        affs.append(rng.choice(SOCIETIES))
    elif messy == "society_only":
        affs = [rng.choice(SOCIETIES)]
    elif messy == "miscountry":
        affs = ["Department of Industrial Engineering, University of Wisconsin-Milwaukee, Milwaukee, WI 53201, India"]
    elif messy == "lookup":
        affs = [rng.choice(LOOKUPS)]
    elif messy == "unknown":
        affs = [rng.choice(["Independent researcher", "Private consultancy, Unknownland", "n/a"])]
    return name + "|" + "|".join(affs)


def make_record(rng, idx, year):
    n_auth = rng.choice([1, 1, 2, 2, 2, 3, 3, 4, 5])
    home = pick(rng, COUNTRIES)
    international = rng.random() < 0.3
    authors = []
    for k in range(n_auth):
        country = home
        if international and k > 0 and rng.random() < 0.7:
            country = pick(rng, COUNTRIES)
        messy = None
        r = rng.random()
        if r < 0.06:
            messy = "secondary"
        elif r < 0.08:
            messy = "society_first"
        elif r < 0.10:
            messy = "society_after"
        elif r < 0.11:
            messy = "society_only"
        elif r < 0.12:
            messy = "miscountry"
        elif r < 0.14:
            messy = "lookup"
        elif r < 0.16:
            messy = "unknown"
        authors.append(author_field(rng, rng.choice(SURNAMES), country, messy))
    if rng.random() < 0.02:
        authors = [author_field(rng, rng.choice(SURNAMES), home, "unknown")]
    doc_type = pick(rng, [("article", 70), ("conference_paper", 22), ("review", 5), ("other", 3)])
    citations = 0 if rng.random() < 0.25 else int(rng.expovariate(1 / 9.0))
    n_sub = rng.choice([0, 1, 1, 2, 2, 2, 3])
    subjects = []
    for _ in range(n_sub):
        s = pick(rng, SUBJECTS)
        if s not in subjects:
            subjects.append(s)
    return [f"P{idx:04d}", str(year), doc_type, str(citations), ";".join(authors), ";".join(subjects)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20131219)
    ap.add_argument("--out", default="data/synthetic_corpus.csv")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rows = []
    idx = 1
    for year in range(1997, 2014):
        weight = 1 if year in (1997, 2013) else 6 + (year - 1998)
        for _ in range(weight):
            rows.append(make_record(rng, idx, year))
            idx += 1
    for dup in (3, 17, 42):
        rows.insert(dup * 3, list(rows[dup - 1]))
    bad = make_record(rng, idx, 2004)
    bad[1] = "20O4"
    rows.insert(100, bad)
    with open(args.out, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "year", "doc_type", "citations", "author_affiliations", "subject_areas"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
