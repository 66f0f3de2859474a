"""Bundled word lists for synthetic address generation.

The name words feed both street names (one word plus a street-type suffix)
and person names (two words).  All generation is uppercase.
"""

NAME_WORDS = (
    "ABIGAIL", "ADAM", "AIDEN", "ALICE", "AMBER", "AMELIA", "ANDREW", "ANGELA",
    "ANNA", "ANTHONY", "ARCHER", "ARIEL", "ARNOLD", "ASHER", "ASPEN", "AUSTIN",
    "AVERY", "BAILEY", "BARRETT", "BECKETT", "BELLA", "BENNETT", "BERNARD",
    "BLAKE", "BOWEN", "BRADY", "BRANDON", "BRIAR", "BROOKS", "BRYCE", "CALEB",
    "CALVIN", "CAMERON", "CARMEN", "CARSON", "CARTER", "CASSIDY", "CEDAR",
    "CHARLOTTE", "CHESTER", "CLARA", "CLAYTON", "CLIFFORD", "COLEMAN", "COLLINS",
    "CONRAD", "COOPER", "CORBIN", "CURTIS", "DAHLIA", "DAISY", "DAKOTA",
    "DALTON", "DAMON", "DANIEL", "DAPHNE", "DARWIN", "DAVIS", "DAWSON", "DELIA",
    "DENNIS", "DEXTER", "DONOVAN", "DORIAN", "DUNCAN", "EDGAR", "EDITH",
    "EDWARD", "ELEANOR", "ELLIOT", "ELOISE", "EMERSON", "EMERY", "EMILY",
    "ESTHER", "EUGENE", "EVERETT", "FELIX", "FINLEY", "FIONA", "FLETCHER",
    "FLORA", "FORREST", "FRANCIS", "FRANKLIN", "FRASER", "GARNET", "GARRETT",
    "GEORGE", "GIDEON", "GILBERT", "GORDON", "GRACE", "GRADY", "GRANT",
    "GRAYSON", "GREGORY", "GRIFFIN", "HARLAN", "HAROLD", "HARPER", "HARRIET",
    "HARVEY", "HAZEL", "HELEN", "HENRY", "HOLDEN", "HOLLIS", "HOWARD", "HUGO",
    "IMOGEN", "INGRID", "IRVING", "ISAAC", "IVY", "JASPER", "JEROME", "JOEL",
    "JONAS", "JORDAN", "JOSEPH", "JULIA", "JULIET", "JUNIPER", "KEATON",
    "KENDALL", "KENNETH", "KINSLEY", "LANDON", "LAUREL", "LAWSON", "LEONARD",
    "LESLIE", "LINCOLN", "LIONEL", "LOGAN", "LORENZO", "LUCAS", "LYDIA",
    "MAGNOLIA", "MALCOLM", "MARCUS", "MARGARET", "MARSHALL", "MARTIN", "MASON",
    "MATILDA", "MAXWELL", "MERCER", "MILES", "MILLER", "MONROE", "MORGAN",
    "MORRIS", "NAOMI", "NATHAN", "NELSON", "NICHOLAS", "NOLAN", "NORMAN",
    "OLIVE", "OLIVER", "OSCAR", "OTIS", "OWEN", "PALMER", "PARKER", "PATRICK",
    "PAXTON", "PEARL", "PERRY", "PHILIP", "PHOEBE", "PORTER", "PRESTON",
    "QUENTIN", "QUINCY", "RAMONA", "RANDALL", "RAYMOND", "REGINALD", "RHETT",
    "RILEY", "ROBERT", "ROLAND", "ROWAN", "RUSSELL", "RUTH", "SAMUEL",
    "SAWYER", "SELMA", "SHELBY", "SIDNEY", "SILAS", "SIMON", "SPENCER",
    "STELLA", "STERLING", "SUTTON", "SYLVIA", "TANNER", "TATUM", "THEODORE",
    "THOMAS", "TOBIAS", "TRAVIS", "TRISTAN", "VERNON", "VICTOR", "VINCENT",
    "VIOLET", "WALLACE", "WALTER", "WARREN", "WATSON", "WESLEY", "WILLARD",
    "WILSON", "WINSTON", "XAVIER", "ZANE",
)

STREET_SUFFIXES = ("ST", "AVE", "RD", "CT", "BLVD", "LN", "DR")

APARTMENT_PREFIXES = ("APT", "APARTMENT", "SUITE", "STE", "UNIT")
FLOOR_PREFIXES = ("FLOOR", "LEVEL")
NAME_PREFIXES = ("ATTN", "C/O")

# Word-equivalence groups used by the substitution transformation.
SUBSTITUTION_GROUPS = (
    ("APT", "APARTMENT"),
    ("SUITE", "STE"),
    ("ROAD", "RD"),
    ("STREET", "ST"),
    ("AVE", "AVENUE"),
)
