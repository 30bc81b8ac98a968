#include <cstddef>

// Training text for the built-in trigram profiles. Plain everyday register,
// a few thousand characters per language; enough for reliable routing of
// short messages into english vs. everything else.

namespace tsc::langdetect {

namespace {

const char* kEnglish =
    "The doctor said the vaccine is safe and it protects against the virus. "
    "I took my daughter to the clinic this morning and she got her second shot. "
    "Many people do not know that the infection can cause cancer later in life. "
    "We should talk about health with our children before they grow up. "
    "The nurse told me the side effects are mild and go away after a day or two. "
    "I read a new study about screening and early detection of the disease. "
    "My friend works at the hospital and she says the waiting room is full today. "
    "Please remember to book your appointment before the end of the month. "
    "There is a lot of wrong information on the internet about this topic. "
    "The school sent a letter to all parents about the new vaccination program. "
    "He asked his doctor whether the treatment would work for him as well. "
    "Awareness campaigns help people understand the risks and make better choices. "
    "It was raining when we left the house so we took the bus to the city center. "
    "She has been feeling much better since she started the new medication. "
    "Could you tell me where the nearest pharmacy is and when it opens. "
    "Most of the young people in this town have already received the first dose. "
    "The government announced new funding for cancer research last week. "
    "I am not sure if the insurance covers the cost of the test. "
    "They watched a short video about how the immune system fights infections. "
    "Every year thousands of families face this diagnosis and need support. "
    "What did you think of the article that was published yesterday. "
    "The results of the trial were published in a well known medical journal. ";

const char* kSpanish =
    "El médico dijo que la vacuna es segura y protege contra el virus. "
    "Llevé a mi hija a la clínica esta mañana y recibió su segunda dosis. "
    "Mucha gente no sabe que la infección puede causar cáncer más adelante. "
    "Debemos hablar de salud con nuestros hijos antes de que crezcan. "
    "La enfermera me dijo que los efectos secundarios son leves y desaparecen pronto. "
    "Leí un estudio nuevo sobre la detección temprana de la enfermedad. "
    "Mi amiga trabaja en el hospital y dice que la sala de espera está llena hoy. "
    "Por favor recuerda pedir tu cita antes de que termine el mes. "
    "Hay mucha información equivocada en internet sobre este tema. "
    "La escuela envió una carta a todos los padres sobre el nuevo programa de vacunación. "
    "Él le preguntó a su médico si el tratamiento también funcionaría para él. "
    "Las campañas de concienciación ayudan a la gente a entender los riesgos. "
    "Estaba lloviendo cuando salimos de casa así que tomamos el autobús al centro. "
    "Ella se siente mucho mejor desde que empezó el nuevo medicamento. "
    "¿Podría decirme dónde está la farmacia más cercana y a qué hora abre? "
    "La mayoría de los jóvenes de este pueblo ya recibieron la primera dosis. "
    "El gobierno anunció nuevos fondos para la investigación del cáncer la semana pasada. "
    "No estoy segura de que el seguro cubra el costo de la prueba. "
    "Vieron un video corto sobre cómo el sistema inmune combate las infecciones. "
    "Cada año miles de familias enfrentan este diagnóstico y necesitan apoyo. "
    "¿Qué te pareció el artículo que se publicó ayer por la tarde? "
    "Los resultados del ensayo se publicaron en una revista médica muy conocida. ";

const char* kFrench =
    "Le médecin a dit que le vaccin est sûr et qu'il protège contre le virus. "
    "J'ai emmené ma fille à la clinique ce matin et elle a reçu sa deuxième dose. "
    "Beaucoup de gens ne savent pas que l'infection peut causer un cancer plus tard. "
    "Nous devrions parler de santé avec nos enfants avant qu'ils grandissent. "
    "L'infirmière m'a dit que les effets secondaires sont légers et disparaissent vite. "
    "J'ai lu une nouvelle étude sur le dépistage précoce de la maladie. "
    "Mon amie travaille à l'hôpital et elle dit que la salle d'attente est pleine aujourd'hui. "
    "N'oubliez pas de prendre rendez-vous avant la fin du mois. "
    "Il y a beaucoup de fausses informations sur internet à propos de ce sujet. "
    "L'école a envoyé une lettre à tous les parents au sujet du nouveau programme de vaccination. "
    "Il a demandé à son médecin si le traitement marcherait aussi pour lui. "
    "Les campagnes de sensibilisation aident les gens à comprendre les risques. "
    "Il pleuvait quand nous sommes partis alors nous avons pris le bus jusqu'au centre ville. "
    "Elle se sent beaucoup mieux depuis qu'elle a commencé le nouveau traitement. "
    "Pourriez-vous me dire où se trouve la pharmacie la plus proche et quand elle ouvre. "
    "La plupart des jeunes de cette ville ont déjà reçu la première dose. "
    "Le gouvernement a annoncé de nouveaux financements pour la recherche contre le cancer. "
    "Je ne suis pas sûre que l'assurance couvre le coût de l'examen. "
    "Ils ont regardé une courte vidéo sur la façon dont le système immunitaire combat les infections. "
    "Chaque année des milliers de familles font face à ce diagnostic et ont besoin de soutien. "
    "Qu'avez-vous pensé de l'article qui a été publié hier soir. "
    "Les résultats de l'essai ont été publiés dans une revue médicale très connue. ";

const char* kPortuguese =
    "O médico disse que a vacina é segura e protege contra o vírus. "
    "Levei minha filha à clínica hoje de manhã e ela recebeu a segunda dose. "
    "Muitas pessoas não sabem que a infecção pode causar câncer mais tarde. "
    "Devemos falar sobre saúde com nossos filhos antes que eles cresçam. "
    "A enfermeira me disse que os efeitos colaterais são leves e passam logo. "
    "Li um estudo novo sobre a detecção precoce da doença. "
    "Minha amiga trabalha no hospital e diz que a sala de espera está cheia hoje. "
    "Por favor lembre de marcar sua consulta antes do fim do mês. "
    "Há muita informação errada na internet sobre esse assunto. "
    "A escola enviou uma carta a todos os pais sobre o novo programa de vacinação. "
    "Ele perguntou ao médico se o tratamento também funcionaria para ele. "
    "As campanhas de conscientização ajudam as pessoas a entender os riscos. "
    "Estava chovendo quando saímos de casa então pegamos o ônibus para o centro. "
    "Ela está se sentindo muito melhor desde que começou o novo remédio. "
    "Você poderia me dizer onde fica a farmácia mais próxima e quando ela abre. "
    "A maioria dos jovens desta cidade já recebeu a primeira dose. "
    "O governo anunciou novos recursos para a pesquisa do câncer na semana passada. "
    "Não tenho certeza se o plano de saúde cobre o custo do exame. "
    "Eles assistiram a um vídeo curto sobre como o sistema imunológico combate as infecções. "
    "Todos os anos milhares de famílias enfrentam esse diagnóstico e precisam de apoio. "
    "O que você achou do artigo que foi publicado ontem à noite. "
    "Os resultados do estudo foram publicados em uma revista médica muito conhecida. ";

const char* kGerman =
    "Der Arzt sagte dass der Impfstoff sicher ist und gegen das Virus schützt. "
    "Ich habe meine Tochter heute Morgen in die Klinik gebracht und sie bekam ihre zweite Dosis. "
    "Viele Menschen wissen nicht dass die Infektion später Krebs verursachen kann. "
    "Wir sollten mit unseren Kindern über Gesundheit sprechen bevor sie erwachsen werden. "
    "Die Krankenschwester sagte mir dass die Nebenwirkungen mild sind und schnell vergehen. "
    "Ich habe eine neue Studie über die Früherkennung der Krankheit gelesen. "
    "Meine Freundin arbeitet im Krankenhaus und sie sagt das Wartezimmer ist heute voll. "
    "Bitte denke daran deinen Termin vor dem Ende des Monats zu vereinbaren. "
    "Im Internet gibt es viele falsche Informationen zu diesem Thema. "
    "Die Schule hat allen Eltern einen Brief über das neue Impfprogramm geschickt. "
    "Er fragte seinen Arzt ob die Behandlung auch bei ihm wirken würde. "
    "Aufklärungskampagnen helfen den Menschen die Risiken besser zu verstehen. "
    "Es regnete als wir das Haus verließen also nahmen wir den Bus in die Innenstadt. "
    "Sie fühlt sich viel besser seit sie das neue Medikament nimmt. "
    "Können Sie mir sagen wo die nächste Apotheke ist und wann sie öffnet. "
    "Die meisten jungen Leute in dieser Stadt haben die erste Dosis schon bekommen. "
    "Die Regierung kündigte letzte Woche neue Mittel für die Krebsforschung an. "
    "Ich bin nicht sicher ob die Versicherung die Kosten für den Test übernimmt. "
    "Sie sahen ein kurzes Video darüber wie das Immunsystem Infektionen bekämpft. "
    "Jedes Jahr stehen tausende Familien vor dieser Diagnose und brauchen Unterstützung. "
    "Was hältst du von dem Artikel der gestern veröffentlicht wurde. "
    "Die Ergebnisse der Studie wurden in einer bekannten medizinischen Zeitschrift veröffentlicht. ";

struct Entry {
  const char* lang;
  const char* text;
};

const Entry kProfiles[] = {
    {"en", kEnglish}, {"es", kSpanish}, {"fr", kFrench},
    {"pt", kPortuguese}, {"de", kGerman},
};

}  // namespace

const char* profile_text(size_t index) { return kProfiles[index].text; }
const char* profile_lang(size_t index) { return kProfiles[index].lang; }
size_t profile_count() { return sizeof(kProfiles) / sizeof(kProfiles[0]); }

}  // namespace tsc::langdetect
