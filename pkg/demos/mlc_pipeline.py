"""Build a Spanish style lexicon from an English-translated seed.

The pipeline: synonym expansion, concept expansion, then purification
(rare filter + correlation filter) against a corpus scored on the
Rude = -2 ... Polite = +2 scale. Watch "señala": it is similar enough to
the hedge centroid to be pulled in by concept expansion, but its presence
barely tracks politeness (r near -0.08), so purification drops it again.

Run with: python demos/mlc_pipeline.py
"""

import io
import json

from stylelex import MlcConfig, ScoredUtterance, load_lexicon, load_table, run_mlc
from stylelex.mlc import expand_concept, expand_synonyms

TABLE = """\
12 6
disculpa 1 0 0 0 0 0
lo siento 0.9 0.43589 0 0 0 0
perdón 0.85 0.52678 0 0 0 0
perdona 0.8 0.6 0 0 0 0
quizás 0 0 0.70711 0.70711 0 0
posible 0 0 0.70711 -0.35355 0.61237 0
supone 0 0 0.70711 -0.35355 -0.61237 0
evidente 0 0 0.58 0 0 0.81462
aparente 0 0 0.55 0 0 0.83516
señala 0 0 0.52 0 0 0.85417
mesa 0 0.2 0 0 0 -0.9798
libro 0.2 0 0 0.4 0.4 -0.4
"""

SEED = {
    "language": "es",
    "categories": {
        "Apologetic": ["disculpa"],
        "Hedge": ["quizás", "posible", "supone"],
    },
}

# (score, text): politer utterances score higher
CORPUS = [
    (1.9, "Quizás sea posible, y todo el mundo supone que habrá acuerdo."),
    (1.6, "Quizás el resultado es aparente y también evidente para todos."),
    (1.5, "Es posible y evidente que el modelo supone demasiado."),
    (1.2, "Quizás sea posible ver su lado aparente mañana."),
    (1.2, "El efecto aparente es evidente si uno supone lo contrario."),
    (-0.9, "Quizás no venga nadie a la reunión."),
    (-1.0, "No es posible terminar esto hoy."),
    (-1.3, "El informe supone un retraso terrible."),
    (-0.4, "El error es evidente en la tabla."),
    (-0.2, "La causa aparente sigue sin confirmarse."),
    (1.3, "El estudio señala una mejora clara."),
    (-1.0, "El auditor señala fallos graves en el proceso."),
    (0.9, "La guía señala los pasos correctos."),
    (-0.9, "El cliente señala problemas sin resolver."),
    (0.7, "La nota señala el cambio de horario."),
    (0.0, "El mapa señala la ruta habitual."),
    (1.6, "Disculpa, lo siento mucho, perdón por llegar tarde."),
    (1.3, "Disculpa otra vez, lo siento de veras, perdona la molestia."),
    (1.0, "Perdón y perdona por el ruido de ayer."),
    (0.2, "Disculpa el desorden de la sala."),
    (0.4, "Vaya, lo siento por el malentendido."),
    (-0.2, "Perdón, pero esto no puede seguir así."),
    (0.3, "Perdona el retraso en la respuesta."),
]


def show(title, lex):
    print(title)
    for cat in lex.categories:
        print(f"  {cat.name:11s} {list(cat.terms)}")
    print()


def main():
    table = load_table(io.StringIO(TABLE))
    seed = load_lexicon(json.dumps(SEED))
    corpus = [ScoredUtterance(f"es-{i:02d}", text, score)
              for i, (score, text) in enumerate(CORPUS, start=1)]
    cfg = MlcConfig()  # syn 0.60, concept 0.50, floor 3, r threshold 0.15

    show("seed (machine-translated):", seed)
    expanded = expand_synonyms(seed, table, cfg)
    show("after synonym expansion (neighbors of each seed word):", expanded)
    expanded = expand_concept(expanded, table, cfg)
    show("after concept expansion (neighbors of each category centroid):", expanded)

    final, report = run_mlc(seed, table, corpus, "whitespace", cfg)
    show("after purification:", final)

    print("purification report:")
    for e in report.entries:
        r = "undefined" if e.r is None else f"{e.r:+.4f}"
        verdict = "removed" if e.removed else "kept"
        print(f"  {e.category}/{e.word}: {e.reason}, {e.occurrences} occurrences, "
              f"r = {r} -> {verdict}")


if __name__ == "__main__":
    main()
