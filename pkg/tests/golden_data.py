"""Golden copies of the published tables, retyped independently of the
package constants so the fidelity tests compare two transcriptions."""

GOLDEN_TABLES = {
    "joy": {
        "columns": ("anticipation", "anger", "disgust", "sadness", "surprise", "fear", "acceptance"),
        "rows": (
            (0.60, 1.73, 1.40, 2.13, 0.66, 1.20, 1.06),
            (1.75, 0.83, 0.62, 1.04, 0.85, 1.37, 1.70),
            (1.70, 0.95, 0.84, 1.34, 1.06, 1.04, 2.15),
            (2.14, 0.88, 0.64, 0.91, 1.08, 0.91, 2.11),
            (2.58, 1.25, 0.83, 0.83, 2.08, 0.66, 2.83),
        ),
    },
    "anticipation": {
        "columns": ("joy", "anger", "disgust", "sadness", "surprise", "fear", "acceptance"),
        "rows": (
            (1.42, 0.60, 0.60, 1.21, 0.25, 0.92, 1.50),
            (1.92, 0.92, 0.92, 0.92, 1.36, 1.04, 1.96),
            (1.97, 1.20, 0.88, 1.26, 1.05, 1.23, 1.97),
            (2.41, 1.22, 0.74, 1.19, 1.54, 0.90, 2.38),
            (2.90, 1.27, 1.09, 1.81, 1.36, 1.27, 2.36),
        ),
    },
    "anger": {
        "columns": ("joy", "anticipation", "disgust", "sadness", "surprise", "fear", "acceptance"),
        "rows": (
            (2.01, 1.42, 0.21, 0.65, 0.59, 0.63, 1.80),
            (2.31, 2.00, 0.86, 1.00, 1.62, 1.20, 2.13),
            (1.85, 2.42, 1.23, 2.09, 1.42, 1.66, 2.42),
            (2.30, 2.10, 1.70, 1.80, 1.40, 2.00, 2.00),
            (1.25, 1.62, 3.00, 3.25, 1.62, 0.85, 1.87),
        ),
    },
    "fear": {
        "columns": ("joy", "anticipation", "anger", "disgust", "sadness", "surprise", "acceptance"),
        "rows": (
            (2.09, 1.72, 0.77, 0.61, 0.87, 0.77, 1.85),
            (2.15, 1.71, 0.79, 0.74, 1.23, 1.15, 2.12),
            (2.10, 2.05, 1.78, 1.05, 1.94, 1.52, 2.10),
            (1.55, 2.11, 1.11, 1.22, 1.33, 1.22, 2.00),
            (1.37, 1.50, 2.00, 1.50, 1.62, 1.62, 2.12),
        ),
    },
    "acceptance": {
        "columns": ("joy", "anticipation", "anger", "disgust", "sadness", "surprise", "fear"),
        "rows": (
            (1.48, 1.04, 0.52, 0.32, 0.84, 0.32, 0.72),
            (1.72, 1.83, 1.61, 0.94, 1.66, 1.22, 1.27),
            (1.96, 2.06, 1.00, 1.03, 1.06, 1.29, 1.12),
            (2.42, 1.90, 1.11, 0.92, 1.40, 1.14, 1.14),
            (2.38, 2.07, 1.00, 0.69, 1.07, 1.69, 0.92),
        ),
    },
}

# joy at level 2 (50%) split by region of origin
GOLDEN_REGIONAL = {
    "europe": {
        "anticipation": 1.14, "anger": 0.42, "disgust": 0.71, "sadness": 1.00,
        "surprise": 0.57, "fear": 0.85, "acceptance": 2.00,
    },
    "middle_east": {
        "anticipation": 1.80, "anger": 1.09, "disgust": 0.71, "sadness": 1.66,
        "surprise": 1.33, "fear": 1.33, "acceptance": 2.09,
    },
    "south_east_asia": {
        "anticipation": 1.66, "anger": 1.50, "disgust": 1.16, "sadness": 0.50,
        "surprise": 1.33, "fear": 0.66, "acceptance": 2.33,
    },
}

# reported average detection rates for the four published recognition targets
GOLDEN_CONFUSION_DIAGONAL = {
    "neutral": 0.68,
    "afraid": 0.87,
    "sadness": 0.86,
    "nervous": 0.65,
}
