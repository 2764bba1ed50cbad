#!/usr/bin/env python3
"""Regenerate the shipped lexicon at src/norma/data/lexicon.tsv.

Entries are built from embedded common-word lists plus regular morphology
(third-person singular and past participle for verbs, plurals for nouns),
an irregular-verb table, and productive derivations (re-/un-/over-/mis-
prefixes, -ing gerunds, -er agent nouns). Output format, one entry per
line:  lemma<TAB>pos<TAB>s3<TAB>pastpart  with "-" for unused forms.
"""

from __future__ import annotations

import sys
from pathlib import Path

IRREGULAR_VERBS = {
    # lemma: past participle
    "arise": "arisen", "awake": "awoken", "be": "been", "bear": "borne",
    "beat": "beaten", "become": "become", "begin": "begun", "bend": "bent",
    "bet": "bet", "bind": "bound", "bite": "bitten", "bleed": "bled",
    "blow": "blown", "break": "broken", "breed": "bred", "bring": "brought",
    "broadcast": "broadcast", "build": "built", "burn": "burnt",
    "burst": "burst", "buy": "bought", "cast": "cast", "catch": "caught",
    "choose": "chosen", "cling": "clung", "come": "come", "cost": "cost",
    "creep": "crept", "cut": "cut", "deal": "dealt", "dig": "dug",
    "do": "done", "draw": "drawn", "dream": "dreamt", "drink": "drunk",
    "drive": "driven", "eat": "eaten", "fall": "fallen", "feed": "fed",
    "feel": "felt", "fight": "fought", "find": "found", "flee": "fled",
    "fling": "flung", "fly": "flown", "forbid": "forbidden",
    "forget": "forgotten", "forgive": "forgiven", "freeze": "frozen",
    "get": "got", "give": "given", "go": "gone", "grind": "ground",
    "grow": "grown", "hang": "hung", "have": "had", "hear": "heard",
    "hide": "hidden", "hit": "hit", "hold": "held", "hurt": "hurt",
    "keep": "kept", "kneel": "knelt", "know": "known", "lay": "laid",
    "lead": "led", "lean": "leant", "leap": "leapt", "learn": "learnt",
    "leave": "left", "lend": "lent", "let": "let", "lie": "lain",
    "light": "lit", "lose": "lost", "make": "made", "mean": "meant",
    "meet": "met", "pay": "paid", "put": "put", "quit": "quit",
    "read": "read", "ride": "ridden", "ring": "rung", "rise": "risen",
    "run": "run", "say": "said", "see": "seen", "seek": "sought",
    "sell": "sold", "send": "sent", "set": "set", "sew": "sewn",
    "shake": "shaken", "shed": "shed", "shine": "shone", "shoot": "shot",
    "show": "shown", "shrink": "shrunk", "shut": "shut", "sing": "sung",
    "sink": "sunk", "sit": "sat", "sleep": "slept", "slide": "slid",
    "sling": "slung", "speak": "spoken", "speed": "sped", "spell": "spelt",
    "spend": "spent", "spill": "spilt", "spin": "spun", "spit": "spat",
    "split": "split", "spread": "spread", "spring": "sprung",
    "stand": "stood", "steal": "stolen", "stick": "stuck", "sting": "stung",
    "stink": "stunk", "stride": "stridden", "strike": "struck",
    "string": "strung", "strive": "striven", "swear": "sworn",
    "sweep": "swept", "swell": "swollen", "swim": "swum", "swing": "swung",
    "take": "taken", "teach": "taught", "tear": "torn", "tell": "told",
    "think": "thought", "throw": "thrown", "thrust": "thrust",
    "tread": "trodden", "understand": "understood", "wake": "woken",
    "wear": "worn", "weave": "woven", "weep": "wept", "win": "won",
    "wind": "wound", "withdraw": "withdrawn", "write": "written",
}

REGULAR_VERBS = """
accept access accompany account accuse achieve acknowledge acquire act
adapt add address adjust administer admit adopt advance advise affect
agree aim allocate allow amend analyse analyze announce annul answer
anticipate apologise appeal appear apply appoint approach approve argue
arrange arrive ask assemble assess assign assist assume assure attach
attain attempt attend audit authorise authorize avoid award back balance
ban base behave believe belong benefit bill block board book borrow
bother brief cancel care carry cause cease certify challenge change
charge check cite claim clarify classify clean clear click close collect
combine comment commence commission commit communicate compare compensate
compete compile complain complete comply compose compute conclude conduct
confer confirm conform connect consent consider consist consult consume
contact contain continue contract contribute control convert convey
cooperate coordinate copy correct count cover create credit cross date
debate decide declare decline decrease dedicate deduct defend defer
define delay delegate delete deliver demand demonstrate deny depart
depend deposit describe deserve design designate destroy detail detain
detect determine develop devote differ direct disable disagree discharge
disclose discontinue discount discover discuss dismiss dispatch display
dispose dispute disqualify distribute divide document donate doubt
download draft drop earn edit educate elect employ enable encourage end
endorse enforce engage enjoy enquire enrol enroll ensure enter entitle
equip escalate establish estimate evaluate examine exceed exchange
exclude excuse execute exempt exercise exist expect expand expire explain
export expose express extend face fail favour feature file fill filter
finalise finance finish fix follow force forecast forfeit form formulate
forward foster fulfil fulfill function fund furnish gain gather generate
govern grade grant greet guarantee guard guess guide handle happen harm
head help hire honour hope host identify ignore illustrate implement
imply import impose improve include incorporate increase incur indemnify
indicate inform initiate insert insist inspect install instruct insure
intend interact interest interpret interview introduce invest invite
invoice invoke involve issue join judge justify label lack land last
launch lease license lift like limit link list live load locate lock log
look mail maintain manage mark market match matter measure mention merge
migrate mind miss mitigate modify monitor move name negotiate nominate
note notice notify object oblige observe obtain occupy occur offer omit
open operate order organise organize outline overlap owe own pack
participate pass perform permit persist phone place plan play pledge
point possess post postpone practise prefer prepare prescribe present
preserve press prevent print proceed process procure produce prohibit
promise promote prompt propose protect prove provide publish pull punish
purchase pursue push qualify question queue quote raise rank rate reach
react realise realize reason recall receive recognise recognize recommend
reconcile record recover recruit redeem reduce refer refine reflect
refund refuse regard register regret regulate reimburse reject relate
release relieve rely remain remark remedy remember remind remit remove
render renew rent repair repeat replace reply report represent request
require reschedule research reserve reside resign resolve respect respond
rest restore restrict result resume retain retire return reveal review
revise revoke reward risk rule save schedule score screen seal search
seat secure select serve settle share shift ship sign signal specify
spell sponsor staff stamp start state stay stem stop store stress
structure study subject submit subscribe substitute succeed suffer suggest
summarise supervise supply support suppose surrender survey suspend
sustain switch tackle talk target tax terminate test testify thank total
touch trace track trade train transfer transform translate transmit
transport travel treat trigger trust try turn undertake unload update
upgrade upload urge use validate value vary verify view visit void vote
wait waive walk want warn warrant watch weigh welcome wish withhold
witness work
""".split()

NOUNS = """
ability absence access accident account accuracy action activity
addendum address adjustment administration administrator adult advance
advantage advice agency agenda agent agreement aid aim air airline
airport allowance amendment amount analysis animal annex answer
apartment appeal appendix applicant application appointment approach
approval area argument arrangement arrival article assembly assessment
asset assignee assignment assistance assistant association assumption
attachment attempt attendance attention auditor authority authorisation
authorization autumn average award baggage balance bank base basis batch
bedroom behalf behaviour benefit bicycle bill board body bonus book
booking border branch breach breakfast budget building bus business
buyer cabinet calendar campus cancellation candidate capacity capital
car card care carrier case cash category cause ceiling center centre
certificate chair chairman chance change chapter charge chart check
choice circumstance city claim claimant class classroom clause client
code coffee colleague college column committee communication community
company compensation competition complaint completion compliance
component computer concern conclusion condition conduct conference
confirmation conflict connection consent consequence consideration
construction consultant consumer contact container content contents
context contractor contrast control controller cooperation coordinator
copy corporation correction cost council counsel country course court
coverage credit criteria criterion currency customer damage data date
day deadline dealer debt decision declaration deed default defect
delegate delivery demand department departure deposit description design
desk detail developer device diagram difference difficulty dinner
direction director directory disability disclosure discount discretion
discussion dispute distance distribution district division doctor
document documentation dollar door draft driver due duration duty
economy edition education effect effort election electricity element
eligibility email emergency employee employer employment end energy
engine engineer enquiry enrolment enterprise entity entrance entry
environment equipment error estate evaluation evening event evidence
exam examination example exception excess exchange exclusion excuse
exercise exhibit exit expense experience expert expiration expiry
explanation exposure expression extension extent facility factor faculty
failure fall family fare farm fault feature fee feedback field figure
file final finance finding fine firm fiscal floor flight focus folder
food force forecast form format formula foundation frame framework
fraud freedom freight function fund future game gap garden gas gate
goal good goods government grade grader graduate grant ground group
growth guarantee guardian guest guidance guide guideline hall hand
handbook handler harm hazard head health hearing height holder holiday
home hospital host hotel hour house household housing idea
identification identity image impact implementation import importance
improvement incident income increase indemnity index individual industry
information infrastructure initiative injury input insurance inspection
inspector installation institution instruction instructor instrument
insurer intent intention interest interface interruption interval
interview introduction inventory investment investor invoice issue item
job journey judge judgment key kind kitchen knowledge lab laboratory
labour land landlord language laptop law lawyer leader leadership lease
teacher lecture lecturer left length lesson letter level liability
library licence license licensee licensor life lift limit limitation
line list litigation loan location lock log loss lunch machine mail
maintenance majority man management manager manner manual manufacturer
map margin mark market match material matter maximum meal meaning means
measure mechanism media meeting member membership memorandum memory
merchandise merger message method metre mile milestone mind minimum
minister ministry minority minute mission mistake mode model moment
money monitor month morning mortgage motion motor movement name nation
nature need network news night notice notification number object
objective obligation occasion occupancy occurrence offer office officer
official omission operation operator opinion opportunity option order
organisation organization origin outcome outline output overview owner
ownership pack package page paper paragraph parent park parking part
participant participation partner partnership party passenger password
past path patient pattern pause pay payment penalty pension people
percent percentage performance period permission permit person personnel
perspective phase phone photo photograph phrase piece place plan
platform pleasure pledge point policy pool population portal portion
position possession possibility post power practice premise premium
presence presentation president pressure price principal principle
printer priority privacy problem procedure proceeding process processor
producer product production profession professor profile profit program
programme progress prohibition project promise promotion proof property
proposal proposition proprietor prospect protection protocol provider
provision public publication purchase purchaser purpose quality quantity
quarter question queue quote range rate ratio reason rebate receipt
receiver reception recipient recommendation record recovery reduction
refund regard region register registrar registration regulation
rejection relation relationship release relief remainder remark remedy
reminder removal rent repair replacement reply report representation
representative reputation request requirement research reservation
residence resident resolution resource respect respondent response
responsibility rest restaurant restriction result resume retention
return revenue review revision reward right risk road role room route
routine rule safety salary sale sample sanction saving schedule scheme
school science scope score screen script season seat section sector
security selection seller semester seminar sender sentence sequence
series server service session set settlement severity shape share
shareholder sheet shipment shipping shop side sign signature
significance singer site situation size skill software solution sort
source space speaker specification speech speed spring staff stage
stake stakeholder standard start state statement station status statute
stay step stock stop storage store strategy street strength stress
structure student study style subcontractor subject submission
subscriber subscription subsidiary substance success successor summary
summer supervisor supplement supplier supply support surface surname
surplus survey suspension syllabus system table target task tax
taxpayer team technology telephone template tenant term termination
territory test text theme theory thing third threshold ticket time
timetable title tool topic total town trade trademark traffic trainee
trainer training transaction transcript transfer transition
transmission transport travel treatment trial trip trust trustee
tuition turn tutor type union unit university update upgrade usage use
user utility vacancy vacation validity value variation vehicle vendor
venue verification version video view violation visa visit visitor
voice volume voucher wage waiver walk wall warehouse warning warranty
waste water way weather web website week weekend weight welfare winter
withdrawal witness woman word work worker workshop world writing year
zone
""".split()

ADJECTIVES = """
able absent academic acceptable accessible accurate active actual
additional adequate administrative advance adverse affected aggregate
alternative annual applicable appropriate approved assigned associated
automatic available average aware bad basic big binding brief broad busy
capable careful central certain cheap chief civil clear close cold
collective commercial common comparable competent complete complex
compulsory concerned conditional confident confidential consistent
constant correct corresponding current daily dear deep defective
delinquent dependent designated detailed different difficult direct
disabled distinct domestic double due early easy economic educational
effective electronic eligible empty entire environmental equal
equivalent essential excess exclusive exempt existing expensive expired
express external extra fair faithful false familiar fast final financial
fine firm first fiscal fixed flexible following foreign formal former
free frequent fresh full future general global good governmental great
gross happy hard heavy high hot huge human immediate important inactive
incomplete incorrect independent indirect individual industrial initial
instant institutional insufficient intellectual intended interested
interim internal international invalid joint key large late least legal
liable light likely limited local long low main mandatory material
maximum mechanical medical medium mental minimal minimum minor missing
mobile moderate modern monthly multiple mutual narrow national necessary
negative net neutral new next normal notable null obvious official old
online only open operational opposite optional oral ordinary original
other outside outstanding overall overdue partial particular past
payable pending permanent personal physical plain pleasant polite poor
popular positive possible potential practical precise preliminary
preferred present previous primary principal prior private probable
professional prompt proper proposed prospective public punctual pure
qualified quarterly quick quiet rapid rare raw ready real reasonable
recent recognised red reduced redundant regional registered regular
related relative relevant reliable remaining remote repeated required
residential respective responsible restricted retail right routine
royal safe same satisfactory scheduled scientific second secondary
secure senior separate serious severe short sick significant similar
simple single slow small social sole solid sound special specific
stable standard statutory strict strong subject subsequent substantial
successful sufficient suitable supplementary sure taxable technical
temporary tentative terminal third thorough tight total tough true
typical unable unacceptable unauthorised unavailable unclear undue
unfair unique unknown unlawful unpaid unreasonable unusual upcoming
urgent usual vacant valid valuable variable various verbal visible
vital voluntary weak weekly wide willing written wrong yearly young
""".split()

FUNCTION_WORDS = """
a about above across after again against all almost along already also
although always am among an and another any anyone anything are around
as at be because been before behind being below between beyond both but
by can cannot could did do does doing down during each either else

enough even ever every everyone everything except few for from further
had has have having he her here hers herself him himself his how i if
in into is it its itself just latest less many may me might mine more
most much must my myself near neither never no nobody none nor not
nothing now of off on once one only onto or other our ours ourselves
out over own per perhaps please quite rather re s same shall she should
since so some someone something soon still such than that the their
theirs them themselves then there these they this those through
throughout till to together too toward towards under until unto up upon
us very was we were what whatever when whenever where whether which
while who whom whose why will with within without would yet you your
yours yourself
""".split()

NUMBER_WORDS = """
zero one two three four five six seven eight nine ten eleven twelve
thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty
thirty forty fifty sixty seventy eighty ninety hundred thousand million
first third fourth fifth sixth seventh eighth ninth tenth
monday tuesday wednesday thursday friday saturday sunday january
february march april june july august september october november
december today tomorrow yesterday
""".split()

DOMAIN_WORDS = [
    ("student", "n"), ("grader", "n"), ("registration", "n"),
    ("resubmission", "n"), ("exam", "n"), ("coursework", "n"),
    ("resubmit", "v"), ("signup", "n"),
]

PREFIXABLE = """
act activate allocate apply arrange assess assign balance book brief
build calculate calibrate certify charge check claim classify collect
configure confirm connect consider construct count create credit define
deliver deploy design direct distribute draft draw edit educate elect
enable enter establish estimate evaluate examine export file fill
finance fit format formulate fund generate grade group hear heat
import inspect install insure interpret introduce invest issue judge
label launch lease license load locate lock mark market measure merge
model name negotiate number open order organise organize pack paint
pay place plan play position post present price print process produce
program publish purchase qualify read record register regulate report
present route run schedule seal search seat secure select sell send
set settle shape ship sign size sort start state stock store structure
submit supply survey take test tests train transfer transmit try tune
turn type use value verify view visit vote weigh wire work wrap write
""".split()


def doubles_final(verb: str) -> bool:
    if len(verb) < 3:
        return False
    vowels = "aeiou"
    a, b, c = verb[-3], verb[-2], verb[-1]
    if c in vowels + "wxy":
        return False
    known = {"stop", "plan", "refer", "occur", "permit", "submit", "admit",
             "commit", "omit", "prefer", "transfer", "regret", "equip",
             "ship", "drop", "grab", "trim", "wrap", "step", "remit", "log"}
    return verb in known or (a not in vowels and b in vowels and len(verb) <= 4)


def verb_s3(verb: str) -> str:
    if verb.endswith(("s", "x", "z", "ch", "sh", "o")):
        return verb + "es"
    if verb.endswith("y") and len(verb) > 1 and verb[-2] not in "aeiou":
        return verb[:-1] + "ies"
    return verb + "s"


def verb_pastpart(verb: str) -> str:
    if verb in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[verb]
    if verb.endswith("e"):
        return verb + "d"
    if verb.endswith("y") and len(verb) > 1 and verb[-2] not in "aeiou":
        return verb[:-1] + "ied"
    if doubles_final(verb):
        return verb + verb[-1] + "ed"
    return verb + "ed"


def gerund(verb: str) -> str:
    if verb.endswith("ie"):
        return verb[:-2] + "ying"
    if verb.endswith("e") and not verb.endswith("ee"):
        return verb[:-1] + "ing"
    if doubles_final(verb):
        return verb + verb[-1] + "ing"
    return verb + "ing"


def noun_plural(noun: str) -> str:
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    return noun + "s"


def build() -> list[tuple[str, str, str, str]]:
    entries: dict[tuple[str, str], tuple[str, str, str, str]] = {}

    def add(lemma: str, pos: str, s3: str = "-", pastpart: str = "-") -> None:
        entries.setdefault((lemma, pos), (lemma, pos, s3, pastpart))

    verbs = set(REGULAR_VERBS) | set(IRREGULAR_VERBS)
    for prefix in ("re", "un", "over", "mis"):
        verbs |= {prefix + v for v in PREFIXABLE}
    for verb in verbs:
        add(verb, "v", verb_s3(verb), verb_pastpart(verb))
        add(gerund(verb), "n", noun_plural(gerund(verb)))

    for noun in NOUNS:
        add(noun, "n", noun_plural(noun))
    for verb in PREFIXABLE:
        agent = verb + ("r" if verb.endswith("e") else
                        verb[-1] + "er" if doubles_final(verb) else "er")
        add(agent, "n", noun_plural(agent))
    for adj in ADJECTIVES:
        add(adj, "adj")
        if adj.endswith("y") and adj[-2] not in "aeiou":
            add(adj[:-1] + "ily", "adv")
        elif adj.endswith("le") and adj[-3] not in "aeiou":
            add(adj[:-1] + "y", "adv")
        elif not adj.endswith("ly"):
            add(adj + "ly", "adv")
    for word in FUNCTION_WORDS + NUMBER_WORDS:
        add(word, "fn")
    for lemma, pos in DOMAIN_WORDS:
        if pos == "v":
            add(lemma, "v", verb_s3(lemma), verb_pastpart(lemma))
        else:
            add(lemma, "n", noun_plural(lemma))
    return sorted(entries.values())


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "src" / "norma" / "data" / "lexicon.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = build()
    with out.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write("\t".join(row) + "\n")
    print(f"wrote {len(rows)} entries to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
