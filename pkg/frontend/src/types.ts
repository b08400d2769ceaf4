/** JSON shapes of the quadwalk HTTP API (all responses carry `v: 1`). */

export interface TermJson {
  kind: "iri" | "blank" | "literal";
  value: string;
  lang?: string;
  datatype?: string;
}

export interface RankedEntry {
  resource: TermJson;
  score: number;
}

export interface RankedResponse {
  v: 1;
  entries: RankedEntry[];
}

export interface HealthResponse {
  v: 1;
  status: string;
  quads: number;
}

export interface SessionResponse {
  v: 1;
  sessionId: string;
  user: string;
}

export interface TagInfo {
  concept: TermJson;
  weight: number;
  tagger: TermJson;
}

export interface ResourceView {
  v: 1;
  id: string;
  types: string[];
  abbrev: string | null;
  title: string;
  abstract: string;
  outgoing: Record<string, TermJson[]>;
  incoming: Record<string, TermJson[]>;
  tags: TagInfo[];
}

export interface FolderEntry {
  resource: TermJson;
  weight: number;
  insertTime: string;
}

export interface OrganizeResponse {
  v: 1;
  user: string;
  folders: Record<string, FolderEntry[]>;
}

export interface TagResponse {
  v: 1;
  association: string;
  graph: string;
}

export interface StatsResponse {
  v: 1;
  resource: string;
  metric: string;
  value: number;
  window?: { start: string; end: string };
}

/** Walker configuration accepted by /discover and /reasoner (camelCase). */
export interface WalkerCfg {
  mode?: "diffusion" | "montecarlo";
  walkersPerSeed?: number;
  initialEnergy?: number;
  decay?: number;
  energyThreshold?: number;
  maxSteps?: number;
  rngSeed?: number;
}

export interface DiscoverBody {
  seeds: string[];
  returnTypes?: string[];
  cfg?: WalkerCfg;
}

export interface RefereeParams {
  article: string;
  maxDepthCoauthor?: number;
  decay?: number;
  cfg?: WalkerCfg;
}

export interface GenericReasonerParams {
  seeds: string[];
  cfg?: WalkerCfg;
}

export interface ReasonerBody {
  name: string;
  params: RefereeParams | GenericReasonerParams;
}

export interface TagBody {
  concept: string;
  resource: string;
  weight: number;
}
