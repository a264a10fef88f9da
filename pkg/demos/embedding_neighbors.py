"""Walk through the word-vector table: load, cosine, k-NN, centroid queries.

Run with: python demos/embedding_neighbors.py
"""

import io

from stylelex import centroid, cosine, knn, load_table

# A tiny Spanish table in the plain word-vector text format. The header is
# "V D"; since D is fixed, surfaces may contain spaces ("lo siento").
TABLE = """\
8 4
disculpa 1 0 0 0
lo siento 0.9 0.43589 0 0
perdón 0.85 0.52678 0 0
quizás 0 0 0.70711 0.70711
posible 0 0 0.70711 -0.70711
supone 0 0.2 0.70711 0
mesa 0 0.98 0 -0.19
libro 0.3 0.8 0.3 0.2
"""


def main():
    table = load_table(io.StringIO(TABLE))
    print(f"loaded {len(table)} vectors of dimension {table.dim}")
    print("vocabulary:", ", ".join(table.vocab))
    print()

    a = table.lookup("disculpa")
    b = table.lookup("lo siento")
    print(f"cosine(disculpa, lo siento) = {cosine(a, b):.4f}")
    print(f"cosine(disculpa, mesa)      = {cosine(a, table.lookup('mesa')):.4f}")
    print()

    print("nearest neighbors of 'disculpa' (k=4, min_sim=0.5):")
    for hit in knn(table, a, k=4, min_sim=0.5):
        print(f"  {hit.word:12s} {hit.similarity:.4f}")
    print("the query word itself ranks first; exclude it when expanding a lexicon")
    print()

    center = centroid(table, ["quizás", "posible", "supone"])
    print("neighbors of the hedge-word centroid (k=5, min_sim=0.3):")
    for hit in knn(table, center, k=5, min_sim=0.3):
        print(f"  {hit.word:12s} {hit.similarity:.4f}")
    print()
    print("every query is an exact brute-force scan: rerunning it can never")
    print("shuffle the ranking, and ties fall back to vocabulary order")


if __name__ == "__main__":
    main()
