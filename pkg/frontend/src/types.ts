// Mirrors of the server's JSON wire formats. The client never invents
// semantics of its own: everything here is shaped by what the API returns.

export type ColorName = "RED" | "BLUE" | "GREEN" | "YELLOW" | "PURPLE" | "BROWN";
export type TextureName = "GRASS" | "DIRT" | "WATER" | "ICE" | "WOOD";
export type AttrName = "shirt_color" | "hair_color" | "size";
export type PredName = "EVEN" | "ODD" | "NEGATIVE" | "POSITIVE" | "PRIME";

export interface ExprDoc {
  kind: string;
  [key: string]: unknown;
}

export interface AssertDoc {
  kind: "assert";
  property: { kind: "attr"; name: AttrName };
  matcher: MatcherDoc;
}

export type MatcherDoc =
  | { kind: "equals"; value: ExprDoc }
  | { kind: "predicate"; pred: PredName };

export interface TestProgramDoc {
  setup: ExprDoc[];
  asserts: AssertDoc[];
}

export interface CritterProgramDoc {
  init: ExprDoc[];
  loop: ExprDoc[];
}

export interface MineDoc {
  x: number;
  y: number;
  test: TestProgramDoc;
}

export interface BoardDoc {
  width: number;
  height: number;
  tiles: string[]; // row strings, codes G D W I O
  spawn: [number, number];
  tower: [number, number];
}

export interface PathDoc {
  section: string;
  indices: number[];
}

export interface MutationDoc {
  class: string;
  path: PathDoc;
  edit: { kind: string; [key: string]: unknown };
}

export interface DiffEntryDoc {
  path: PathDoc;
  class: string;
  before: ExprDoc;
  after: ExprDoc | null;
}

export interface MutantDetailDoc {
  id: string;
  mutations: MutationDoc[];
  diff: DiffEntryDoc[];
}

export interface LevelSummaryDoc {
  id: string;
  name: string;
  category: string;
  difficulty: number;
  critters: number;
  mineBudget: number;
  mutantCount: number;
}

export interface LevelDoc {
  version: number;
  id: string;
  name: string;
  category: string;
  board: BoardDoc;
  cut: CritterProgramDoc;
  mutants: MutationDoc[][];
  critters: number;
  mineBudget: number;
  difficulty: number;
  mutantDetails?: MutantDetailDoc[];
}

export type EventKind = "spawned" | "moved" | "mine_evaluated" | "trapped" | "saved";

export interface EventDoc {
  tick: number;
  critter: string;
  kind: EventKind;
  data: {
    x?: number;
    y?: number;
    critterKind?: "healthy" | "mutant";
    mutant?: string | null;
    verdict?: "pass" | "fail";
    [key: string]: unknown;
  };
}

export interface ScoreDoc {
  healthySaved: number;
  healthyTrapped: number;
  mutantsTrapped: number;
  mutantsEscaped: number;
  minesUsed: number;
  timeBonus: number;
  total: number;
}

export interface GameDoc {
  gameId: string;
  levelId: string;
  seed: number;
  mines: MineDoc[];
  population: number;
  events: EventDoc[];
  score: ScoreDoc;
}

export interface IssueDoc {
  severity: "ERROR" | "WARNING";
  code: string;
  detail: string;
}

export interface LeaderboardEntryDoc {
  player: string;
  score: number;
  gamesPlayed: number;
}

export interface PaletteDoc {
  colors: ColorName[];
  textures: TextureName[];
  walkableTextures: TextureName[];
  tileCodes: Record<TextureName, string>;
  predicates: PredName[];
  attributes: { name: AttrName; type: "color" | "int" }[];
  inputs: ("x" | "y")[];
  arithmeticOps: string[];
  comparisonOps: string[];
}

export interface AnalysisDoc {
  routeCount: number;
  mines: MineDoc[];
  mutants: string[];
  matrix: string[][];
  minimalMines: MineDoc[];
  certificate: { status: string; poolSize: number; undetectable: string[] };
  equivalentMutants: string[];
}
