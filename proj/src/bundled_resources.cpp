// Default synonym lexicon and stopword list for EDA. Kept deliberately small;
// real runs should pass --lexicon with a domain lexicon.

namespace augsel {

extern const char kBundledLexicon[] = R"(# word<TAB>synonyms
good	fine,decent,nice,solid
great	excellent,superb,terrific,wonderful
excellent	great,superb,outstanding
wonderful	marvelous,lovely,delightful
nice	pleasant,lovely,good
enjoyable	pleasant,entertaining,fun
funny	amusing,hilarious,comic
beautiful	lovely,gorgeous,stunning
brilliant	dazzling,clever,masterful
charming	delightful,engaging,appealing
clever	smart,witty,ingenious
bad	poor,awful,lousy
terrible	awful,dreadful,horrible
awful	terrible,dreadful,atrocious
boring	dull,tedious,tiresome
dull	boring,flat,lifeless
weak	feeble,flimsy,thin
stupid	dumb,foolish,silly
ugly	unsightly,hideous,grim
mediocre	ordinary,middling,average
film	movie,picture,feature
movie	film,picture,feature
story	plot,tale,narrative
plot	story,storyline,narrative
actor	performer,player,star
acting	performance,portrayal,playing
director	filmmaker,helmer
scene	sequence,episode,moment
script	screenplay,writing
ending	finale,conclusion,climax
character	figure,role,persona
audience	viewers,crowd,spectators
music	score,soundtrack
really	truly,genuinely,very
very	quite,extremely,really
quite	fairly,rather,pretty
often	frequently,regularly
rarely	seldom,infrequently
fast	quick,rapid,swift
slow	sluggish,plodding,leisurely
long	lengthy,extended,prolonged
short	brief,compact,concise
big	large,huge,vast
small	little,tiny,modest
new	fresh,novel,recent
old	aged,dated,stale
strange	odd,weird,peculiar
simple	plain,basic,easy
hard	difficult,tough,demanding
make	create,produce,build
see	watch,view,observe
like	enjoy,appreciate,fancy
love	adore,cherish,treasure
hate	loathe,despise,detest
think	believe,feel,reckon
show	display,reveal,present
try	attempt,strive,seek
end	finish,conclude,close
begin	start,commence,open
)";

extern const char kBundledStopwords[] = R"(a
an
the
and
or
but
if
of
at
by
for
with
about
to
from
in
on
is
are
was
were
be
been
being
it
its
this
that
these
those
i
me
my
we
our
you
your
he
him
his
she
her
they
them
their
what
which
who
whom
as
so
than
too
can
will
just
do
does
did
not
no
nor
)";

}  // namespace augsel
