#!/usr/bin/env python3
"""Regenerates tests/fixtures/lang_sentences.tsv.

Labeled short sentences (>=200 per language) for validating the built-in
trigram language detector. Sentences are built from per-language grammatical
templates and are disjoint from the detector's embedded training text.
"""
import itertools
import os
import random

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures",
                   "lang_sentences.tsv")

EN = {
    "subjects": ["my neighbor", "the young teacher", "our family doctor", "the tall man",
                 "her older brother", "the new student", "his grandmother", "the bus driver",
                 "the whole team", "that little girl"],
    "verbs": ["visited", "remembered", "described", "forgot about", "talked about",
              "wrote about", "asked about", "worried about"],
    "objects": ["the small bakery near the station", "the long meeting on Friday",
                "the broken window in the kitchen", "the quiet garden behind the library",
                "the weather forecast for the weekend", "the price of fresh vegetables",
                "the homework for the history class", "the trip to the mountains"],
    "tails": ["before breakfast", "after the storm", "during the holidays",
              "without any help", "almost every evening", "late in the autumn"],
}
ES = {
    "subjects": ["mi vecino", "la maestra joven", "nuestro médico de cabecera", "el hombre alto",
                 "su hermano mayor", "la estudiante nueva", "su abuela", "el conductor del autobús",
                 "todo el equipo", "esa niña pequeña"],
    "verbs": ["visitó", "recordó", "describió", "olvidó", "mencionó",
              "escribió sobre", "preguntó por", "se preocupó por"],
    "objects": ["la panadería pequeña cerca de la estación", "la reunión larga del viernes",
                "la ventana rota de la cocina", "el jardín tranquilo detrás de la biblioteca",
                "el pronóstico del tiempo para el fin de semana", "el precio de las verduras frescas",
                "la tarea de la clase de historia", "el viaje a las montañas"],
    "tails": ["antes del desayuno", "después de la tormenta", "durante las vacaciones",
              "sin ninguna ayuda", "casi todas las noches", "a finales del otoño"],
}
FR = {
    "subjects": ["mon voisin", "la jeune institutrice", "notre médecin de famille", "l'homme grand",
                 "son frère aîné", "la nouvelle étudiante", "sa grand-mère", "le chauffeur du bus",
                 "toute l'équipe", "cette petite fille"],
    "verbs": ["a visité", "s'est souvenu de", "a décrit", "a oublié", "a mentionné",
              "a écrit sur", "a demandé des nouvelles de", "s'est inquiété de"],
    "objects": ["la petite boulangerie près de la gare", "la longue réunion de vendredi",
                "la fenêtre cassée de la cuisine", "le jardin calme derrière la bibliothèque",
                "les prévisions météo pour le week-end", "le prix des légumes frais",
                "les devoirs du cours d'histoire", "le voyage à la montagne"],
    "tails": ["avant le petit déjeuner", "après l'orage", "pendant les vacances",
              "sans aucune aide", "presque tous les soirs", "à la fin de l'automne"],
}
PT = {
    "subjects": ["meu vizinho", "a professora jovem", "nosso médico de família", "o homem alto",
                 "seu irmão mais velho", "a aluna nova", "sua avó", "o motorista do ônibus",
                 "toda a equipe", "aquela menina pequena"],
    "verbs": ["visitou", "lembrou de", "descreveu", "esqueceu", "mencionou",
              "escreveu sobre", "perguntou sobre", "se preocupou com"],
    "objects": ["a padaria pequena perto da estação", "a reunião longa de sexta-feira",
                "a janela quebrada da cozinha", "o jardim tranquilo atrás da biblioteca",
                "a previsão do tempo para o fim de semana", "o preço dos legumes frescos",
                "o dever de casa da aula de história", "a viagem para as montanhas"],
    "tails": ["antes do café da manhã", "depois da tempestade", "durante as férias",
              "sem nenhuma ajuda", "quase todas as noites", "no final do outono"],
}
DE = {
    "subjects": ["mein Nachbar", "die junge Lehrerin", "unser Hausarzt", "der große Mann",
                 "ihr älterer Bruder", "die neue Studentin", "seine Großmutter", "der Busfahrer",
                 "die ganze Mannschaft", "das kleine Mädchen"],
    "verbs": ["besuchte", "erinnerte sich an", "beschrieb", "vergaß", "erwähnte",
              "schrieb über", "fragte nach", "sorgte sich um"],
    "objects": ["die kleine Bäckerei am Bahnhof", "die lange Besprechung am Freitag",
                "das kaputte Fenster in der Küche", "den ruhigen Garten hinter der Bücherei",
                "die Wettervorhersage für das Wochenende", "den Preis für frisches Gemüse",
                "die Hausaufgaben für den Geschichtsunterricht", "die Reise in die Berge"],
    "tails": ["vor dem Frühstück", "nach dem Gewitter", "während der Ferien",
              "ganz ohne Hilfe", "fast jeden Abend", "am Ende des Herbstes"],
}


def build(lang, parts, n):
    combos = list(itertools.product(parts["subjects"], parts["verbs"],
                                    parts["objects"], parts["tails"]))
    rng = random.Random(20260816)
    rng.shuffle(combos)
    out = []
    for s, v, o, t in combos[:n]:
        sentence = f"{s} {v} {o} {t}"
        sentence = sentence[0].upper() + sentence[1:] + "."
        out.append((lang, sentence))
    return out


def main():
    rows = []
    for lang, parts in [("en", EN), ("es", ES), ("fr", FR), ("pt", PT), ("de", DE)]:
        rows.extend(build(lang, parts, 220))
    with open(OUT, "w", encoding="utf-8") as f:
        f.write("# lang\tsentence - labeled fixture for the trigram detector\n")
        for lang, sentence in rows:
            f.write(f"{lang}\t{sentence}\n")
    print(f"wrote {len(rows)} sentences to {OUT}")


if __name__ == "__main__":
    main()
