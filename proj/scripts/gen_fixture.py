#!/usr/bin/env python3
"""Generates data/fixtures/profiles60.jsonl.

A 60-profile synthetic dataset whose display names use disjoint letter
pools per gender, so username character n-grams separate the classes
perfectly. Each distinct name appears at least seven times: any 10% split
still leaves every name (hence every n-gram) in the training portion.

Run from the repository root:  python3 scripts/gen_fixture.py
"""

import json

# Disjoint alphabets: male names draw on {b,a,d,r,g,m,o}, female on
# {s,e,l,i,k,h,f}. No shared 2..5-gram is possible.
MALE_NAMES = ["badr gamad", "ragab modar", "gomar badab", "dagor marab"]
FEMALE_NAMES = ["selik hefil", "felish keshi", "hikel sefli", "kifesh liseh"]
COPIES = [9, 7, 7, 7]

MALE_DESCS = [
    "مهندس برمجيات",
    "طالب دكتوراه",
    "محاسب في شركة",
    "مهتم بأخبار التقنية",
    "لاعب كرة قدم",
    "مبرمج",
    "مترجم وكاتب",
    "معلم",
]
FEMALE_DESCS = [
    "مهندسة",
    "طبيبة أسنان",
    "معلمة لغة عربية",
    "خريجة جامعية",
    "محاسبة",
    "مترجمة",
    "كاتبة وأم",
    "ممرضة",
]

LOCATIONS = [
    ("جدة", "SA"),
    ("UAE - Dubai", "AE"),
    ("الرياض", "SA"),
    ("الدوحة", "QA"),
    ("بيروت", "LB"),
    ("Paris, France", "OTH"),
    ("", "?"),
    ("عمان", "JO"),
    ("القاهرة", "EG"),
    ("London", "OTH"),
]

MALE_TWEETS = [
    "مباراة الدوري اليوم كانت رائعة",
    "نتائج المباراة عبر http://sport.example.com/m123",
    "السياسة في المنطقة تحتاج حوار @news_ar",
    "اجتماع العمل غدا صباحا",
]
FEMALE_TWEETS = [
    "قلبي مع أمي دائما",
    "صور التخرج مع زميلاتي http://pics.example.com/f9",
    "شعور جميل مع العائلة اليوم @family_ar",
    "وصفة جديدة للعشاء الليلة",
]


def build():
    rows = []
    uid = 0

    def add(name, screen, gender, desc, loc, country, year, followers, friends,
            tweets, friend_names, verified=False):
        nonlocal uid
        uid += 1
        rows.append({
            "user_id": f"u{uid:03d}",
            "display_name": name,
            "screen_name": screen,
            "description": desc,
            "location_raw": loc,
            "created_at": f"{year}-03-{(uid % 27) + 1:02d}",
            "followers_count": followers,
            "friends_count": friends,
            "verified": verified,
            "tweets": tweets,
            "friend_names": friend_names,
            "gold_gender": gender,
            "gold_country": country,
        })

    idx = 0
    for name, copies in zip(MALE_NAMES, COPIES):
        for c in range(copies):
            loc, country = LOCATIONS[idx % len(LOCATIONS)]
            friends = []
            if idx % 5 == 0:
                friends = [MALE_NAMES[(idx + 1) % 4], MALE_NAMES[(idx + 2) % 4],
                           FEMALE_NAMES[idx % 4]]
            add(name, f"{name.split()[0]}{idx:02d}", "m",
                MALE_DESCS[idx % len(MALE_DESCS)], loc, country,
                2009 + (idx % 13), 120 + 17 * idx, 80 + 9 * idx,
                [MALE_TWEETS[idx % 4], MALE_TWEETS[(idx + 1) % 4]],
                friends, verified=(idx % 14 == 0))
            idx += 1

    idx = 0
    for name, copies in zip(FEMALE_NAMES, COPIES):
        for c in range(copies):
            loc, country = LOCATIONS[(idx + 3) % len(LOCATIONS)]
            friends = []
            if idx % 5 == 0:
                friends = [FEMALE_NAMES[(idx + 1) % 4], FEMALE_NAMES[(idx + 2) % 4]]
            add(name, f"{name.split()[0]}{idx:02d}", "f",
                FEMALE_DESCS[idx % len(FEMALE_DESCS)], loc, country,
                2010 + (idx % 12), 260 + 23 * idx, 110 + 11 * idx,
                [FEMALE_TWEETS[idx % 4], FEMALE_TWEETS[(idx + 1) % 4]],
                friends, verified=(idx % 19 == 0))
            idx += 1

    return rows


def main():
    rows = build()
    assert len(rows) == 60
    with open("data/fixtures/profiles60.jsonl", "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {len(rows)} profiles")


if __name__ == "__main__":
    main()
