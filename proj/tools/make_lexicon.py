#!/usr/bin/env python3
"""Generates data/lexicon_ar.tsv: inflected surface form -> lemma."""
import sys

# (singular, broken plural or None, takes sound feminine plural)
NOUNS = [
    ("كتاب", "كتب", False), ("بيت", "بيوت", False), ("ولد", "أولاد", False), ("رجل", "رجال", False),
    ("قلب", "قلوب", False), ("يوم", "أيام", False), ("شهر", "شهور", False), ("بلد", "بلاد", False),
    ("شارع", "شوارع", False), ("صديق", "أصدقاء", False), ("درس", "دروس", False), ("باب", "أبواب", False),
    ("سوق", "أسواق", False), ("وقت", "أوقات", False), ("عمل", "أعمال", False), ("اسم", "أسماء", False),
    ("شيء", "أشياء", False), ("قلم", "أقلام", False), ("نهر", "أنهار", False), ("بحر", "بحار", False),
    ("جبل", "جبال", False), ("طريق", "طرق", False), ("مكتب", "مكاتب", False), ("مسجد", "مساجد", False),
    ("شعب", "شعوب", False), ("أخ", "إخوة", False), ("ابن", "أبناء", False), ("كلب", "كلاب", False),
    ("حلم", "أحلام", False), ("خبر", "أخبار", False), ("فكر", "أفكار", False), ("لون", "ألوان", False),
    ("مدينة", "مدن", True), ("سيارة", None, True), ("مدرسة", "مدارس", True), ("جامعة", None, True),
    ("شركة", None, True), ("حكومة", None, True), ("غرفة", "غرف", True), ("كلمة", None, True),
    ("لغة", None, True), ("قصة", "قصص", True), ("دولة", "دول", True), ("مشكلة", "مشاكل", True),
    ("حياة", None, False), ("ساعة", None, True), ("سنة", "سنوات", False), ("طاولة", None, True),
    ("رسالة", "رسائل", True), ("صورة", "صور", True), ("فكرة", None, True), ("أغنية", "أغاني", True),
    ("حديقة", "حدائق", True), ("مباراة", None, True), ("عائلة", None, True), ("بنت", "بنات", False),
    ("أم", None, True), ("أب", "آباء", False), ("طالب", "طلاب", False), ("معلم", None, False),
    ("مهندس", None, False), ("لاعب", None, False), ("موظف", None, False), ("مسلم", None, False),
    ("فلاح", None, False), ("عامل", "عمال", False), ("كاتب", "كتاب", False), ("شاعر", "شعراء", False),
    ("وطن", "أوطان", False), ("حب", None, False), ("قمر", "أقمار", False), ("نجم", "نجوم", False),
    ("ماء", "مياه", False), ("خبز", None, False), ("طعام", None, False), ("أكل", None, False),
]

# Nouns whose masculine sound plural is common.
SOUND_MASC = {"معلم", "مهندس", "لاعب", "موظف", "مسلم", "فلاح"}

PRONOUNS = ["ه", "ها", "هم", "ك", "ي", "نا", "كم"]

# (past 3ms, imperfect stem after the person prefix)
VERBS = [
    ("كتب", "كتب"), ("درس", "درس"), ("شرب", "شرب"), ("ذهب", "ذهب"), ("خرج", "خرج"), ("دخل", "دخل"),
    ("سمع", "سمع"), ("فهم", "فهم"), ("عرف", "عرف"), ("لعب", "لعب"), ("رجع", "رجع"), ("جلس", "جلس"),
    ("فتح", "فتح"), ("طلب", "طلب"), ("سكن", "سكن"), ("ركب", "ركب"), ("حضر", "حضر"), ("شكر", "شكر"),
    ("عمل", "عمل"), ("حمل", "حمل"), ("نزل", "نزل"), ("وصل", "صل"), ("رسم", "رسم"), ("صنع", "صنع"),
    ("ضحك", "ضحك"), ("غسل", "غسل"), ("قطع", "قطع"), ("كسر", "كسر"), ("لبس", "لبس"), ("نجح", "نجح"),
    ("حفظ", "حفظ"), ("سرق", "سرق"), ("طبخ", "طبخ"), ("قتل", "قتل"), ("ربح", "ربح"), ("سبح", "سبح"),
]


def noun_forms(sing, plural, fem_plural):
    forms = {}
    stem = sing[:-1] + "ت" if sing.endswith("ة") else sing
    bases = [sing]
    forms["ال" + sing] = sing
    for p in PRONOUNS:
        forms[stem + p] = sing
    if plural:
        bases.append(plural)
        forms[plural] = sing
        forms["ال" + plural] = sing
        for p in PRONOUNS:
            forms[plural + p] = sing
    if fem_plural:
        fp = (sing[:-1] if sing.endswith("ة") else sing) + "ات"
        forms[fp] = sing
        forms["ال" + fp] = sing
    if sing in SOUND_MASC:
        for suf in ("ون", "ين"):
            forms[sing + suf] = sing
            forms["ال" + sing + suf] = sing
        forms[sing + "ة"] = sing
        forms["ال" + sing + "ة"] = sing
        forms[sing + "ات"] = sing
    for base in bases:
        for prep in ("بال", "وال", "لل"):
            forms[prep + base] = sing
    return forms


def verb_forms(past, imp):
    forms = {}
    for suf in ("ت", "وا", "نا", "تم", "ت"):
        forms[past + suf] = past
    for pre in ("ي", "ت", "ن", "أ"):
        forms[pre + imp] = past
        for fut in ("س", "ب", "ه"):
            forms[fut + pre + imp] = past
    for pre in ("ي", "ت"):
        forms[pre + imp + "ون"] = past
        forms[pre + imp + "وا"] = past
    forms["ت" + imp + "ين"] = past
    forms["و" + past] = past
    forms["ف" + past] = past
    return forms


def main(out):
    entries = {}
    lemmas = set()
    for sing, plural, fem in NOUNS:
        lemmas.add(sing)
        for k, v in noun_forms(sing, plural, fem).items():
            entries.setdefault(k, v)
    for past, imp in VERBS:
        lemmas.add(past)
        for k, v in verb_forms(past, imp).items():
            entries.setdefault(k, v)
    rows = sorted((k, v) for k, v in entries.items() if k not in lemmas)
    with open(out, "w", encoding="utf-8") as f:
        for k, v in rows:
            f.write(f"{k}\t{v}\n")
    print(f"{len(rows)} entries", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/lexicon_ar.tsv")
