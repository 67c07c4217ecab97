"""Closed experiment vocabulary shared by the grammars, corpus and stimuli.

The lexicon is deliberately small: every word here appears in both bundled
grammar files, and the corpus/stimulus generators draw from these pools
only, so anything they emit is guaranteed to be in-vocabulary.
"""

# Animate nouns fill subject and object slots and can host relative
# clauses.  The first 24 double as stimulus-item participants.
PERSON_NOUNS = (
    "defendant", "lawyer", "cat", "dog", "doctor", "boy", "girl", "thief",
    "monkey", "dentist", "hatter", "son", "teacher", "student", "artist",
    "judge", "farmer", "nurse", "witness", "actor", "singer", "pilot",
    "sailor", "soldier", "dancer", "waiter", "banker", "butcher",
    "plumber", "barber",
)

# Places only ever follow "went to the ...".
PLACE_NOUNS = ("store", "park", "school", "market")

# Verbs whose simple past and past participle coincide, so the same form
# serves both the active and the reduced-relative readings.  These are the
# 24 stimulus verbs.
AMBIGUOUS_VERBS = (
    "chased", "examined", "pushed", "kicked", "followed", "carried",
    "watched", "hugged", "kissed", "painted", "photographed",
    "interviewed", "questioned", "tackled", "scratched", "grabbed",
    "lifted", "touched", "trained", "tickled", "visited", "phoned",
    "helped", "attacked",
)

INTRANSITIVE_VERBS = ("ran", "sang", "panted", "smiled", "laughed", "slept", "waited")

ADJECTIVES = ("happy", "skittish", "tired", "angry", "calm", "nervous")

ADVERBS = ("away", "joyfully", "quickly", "loudly", "gracefully")

END = "."
