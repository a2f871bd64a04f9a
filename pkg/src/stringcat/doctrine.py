"""The doctrine table: capability flags and the equivalence regime of each
flavour of monoidal category."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import StringcatError

FLAGS = ('braided', 'symmetric', 'twist', 'rightDuals', 'leftDuals', 'pivotal',
         'rightTrace', 'leftTrace', 'copyErase', 'mergeInitial', 'dagger',
         'spacial', 'spherical')

REGIMES = ('PlanarIso', 'Iso', 'Regular2D', 'Isotopy3D', 'Framed3D',
           'RewriteCartesian', 'RewriteCoCartesian', 'RewriteBiproduct', 'NoDecider')


@dataclass(frozen=True)
class Doctrine:
    name: str
    flags: frozenset[str]
    regime: str
    conjectural: bool = False

    def has(self, flag: str) -> bool:
        return flag in self.flags

    @property
    def monoidal(self) -> bool:
        return self.base != 'category'

    @property
    def base(self) -> str:
        return self.name.removeprefix('dagger-')

    @property
    def traced(self) -> bool:
        return bool(self.flags & {'rightTrace', 'leftTrace'})

    @property
    def duals(self) -> bool:
        return bool(self.flags & {'rightDuals', 'leftDuals'})

    @property
    def cartesian(self) -> bool:
        return self.regime.startswith('Rewrite')

    def __str__(self) -> str:
        return self.name


_SYM = {'braided', 'symmetric', 'spacial'}
_DUAL = {'rightDuals', 'leftDuals'}
_PIV = _DUAL | {'pivotal'}
_TR = {'rightTrace', 'leftTrace'}

# name -> (flags, regime, coherence only conjectured).  Symmetric doctrines that
# sit above a balanced one carry the twist flag; their twist is the identity.
_BASE: dict[str, tuple[set[str], str, bool]] = {
    'category': (set(), 'Iso', False),
    'planar-monoidal': (set(), 'PlanarIso', False),
    'spacial-monoidal': ({'spacial'}, 'Iso', True),
    'braided-monoidal': ({'braided', 'spacial'}, 'Isotopy3D', False),
    'balanced-monoidal': ({'braided', 'spacial', 'twist'}, 'Framed3D', False),
    'symmetric-monoidal': (set(_SYM), 'Iso', False),
    'planar-autonomous': (set(_DUAL), 'PlanarIso', False),
    'planar-pivotal': (set(_PIV), 'PlanarIso', False),
    'spherical-pivotal': (_PIV | {'spherical'}, 'NoDecider', False),
    'spacial-pivotal': (_PIV | {'spacial', 'spherical'}, 'Iso', True),
    'braided-autonomous': (_DUAL | {'braided', 'spacial'}, 'Regular2D', False),
    'braided-pivotal': (_PIV | {'braided', 'spacial'}, 'Regular2D', False),
    'tortile': (_PIV | {'braided', 'spacial', 'twist', 'spherical'}, 'Framed3D', False),
    'compact-closed': (_PIV | _SYM | {'twist', 'spherical'}, 'Iso', False),
    'right-traced': ({'rightTrace'}, 'PlanarIso', True),
    'planar-traced': (set(_TR), 'PlanarIso', True),
    'spherical-traced': (_TR | {'spherical'}, 'NoDecider', False),
    'spacial-traced': (_TR | {'spacial', 'spherical'}, 'Iso', True),
    'braided-traced': (_TR | {'braided', 'spacial'}, 'Regular2D', False),
    'balanced-traced': (_TR | {'braided', 'spacial', 'twist', 'spherical'}, 'Framed3D', False),
    'symmetric-traced': (_TR | _SYM | {'twist', 'spherical'}, 'Iso', False),
    'product': (_SYM | {'copyErase'}, 'RewriteCartesian', False),
    'coproduct': (_SYM | {'mergeInitial'}, 'RewriteCoCartesian', False),
    'biproduct': (_SYM | {'copyErase', 'mergeInitial'}, 'RewriteBiproduct', False),
    'traced-product': (_SYM | _TR | {'twist', 'copyErase', 'spherical'}, 'RewriteCartesian', False),
    'traced-coproduct': (_SYM | _TR | {'twist', 'mergeInitial', 'spherical'}, 'RewriteCoCartesian', False),
    'traced-biproduct': (_SYM | _TR | {'twist', 'copyErase', 'mergeInitial', 'spherical'},
                         'RewriteBiproduct', False),
}

# dagger variants exist where the dagger is meaningful without extra data
DAGGER_ELIGIBLE = (
    'category', 'planar-monoidal', 'spacial-monoidal', 'braided-monoidal',
    'balanced-monoidal', 'symmetric-monoidal', 'planar-pivotal', 'spherical-pivotal',
    'spacial-pivotal', 'braided-pivotal', 'tortile', 'compact-closed', 'right-traced',
    'planar-traced', 'spherical-traced', 'spacial-traced', 'braided-traced',
    'balanced-traced', 'symmetric-traced', 'biproduct', 'traced-biproduct',
)


def _build() -> dict[str, Doctrine]:
    table = {}
    for name, (flags, regime, conj) in _BASE.items():
        table[name] = Doctrine(name, frozenset(flags), regime, conj)
    for name in DAGGER_ELIGIBLE:
        flags, regime, conj = _BASE[name]
        table['dagger-' + name] = Doctrine('dagger-' + name, frozenset(flags | {'dagger'}),
                                           regime, conj)
    return table


DOCTRINES: dict[str, Doctrine] = _build()

# forgetful arrows of the summary chart (richer -> poorer)
FORGETFUL = [
    ('spacial-monoidal', 'planar-monoidal'), ('braided-monoidal', 'spacial-monoidal'),
    ('balanced-monoidal', 'braided-monoidal'), ('symmetric-monoidal', 'braided-monoidal'),
    ('planar-autonomous', 'planar-monoidal'), ('planar-pivotal', 'planar-autonomous'),
    ('spherical-pivotal', 'planar-pivotal'), ('spacial-pivotal', 'spherical-pivotal'),
    ('braided-autonomous', 'planar-autonomous'), ('braided-autonomous', 'braided-monoidal'),
    ('braided-pivotal', 'braided-autonomous'), ('braided-pivotal', 'planar-pivotal'),
    ('tortile', 'braided-pivotal'), ('tortile', 'balanced-monoidal'),
    ('compact-closed', 'tortile'), ('compact-closed', 'symmetric-monoidal'),
    ('right-traced', 'planar-monoidal'), ('planar-traced', 'right-traced'),
    ('spherical-traced', 'planar-traced'), ('spacial-traced', 'spherical-traced'),
    ('braided-traced', 'planar-traced'), ('braided-traced', 'braided-monoidal'),
    ('balanced-traced', 'braided-traced'), ('balanced-traced', 'balanced-monoidal'),
    ('balanced-traced', 'spacial-traced'),
    ('symmetric-traced', 'balanced-traced'), ('symmetric-traced', 'symmetric-monoidal'),
    ('product', 'symmetric-monoidal'), ('coproduct', 'symmetric-monoidal'),
    ('biproduct', 'product'), ('biproduct', 'coproduct'),
    ('traced-product', 'product'), ('traced-product', 'symmetric-traced'),
    ('traced-coproduct', 'coproduct'), ('traced-coproduct', 'symmetric-traced'),
    ('traced-biproduct', 'biproduct'), ('traced-biproduct', 'traced-product'),
    ('traced-biproduct', 'traced-coproduct'),
]


def get_doctrine(d: str | Doctrine) -> Doctrine:
    if isinstance(d, Doctrine):
        return d
    try:
        return DOCTRINES[d]
    except KeyError:
        raise StringcatError(f'unknown doctrine {d!r}') from None
