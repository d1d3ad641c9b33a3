// Shared types: the structured editor items and the service wire format.

export type VariableSynonym = "something" | "someone" | "thing";

export const VARIABLE_SYNONYMS: VariableSynonym[] = [
  "something",
  "someone",
  "thing",
];

/** One atomic statement: is(subject, attribute) or relation(subject, entity). */
export interface AtomSpec {
  subject: string; // entity name or a variable synonym
  predicate: string; // "is" or a relation symbol
  object: string; // attribute (for "is") or entity name
  positive: boolean;
}

export interface FactItem {
  kind: "fact";
  id: number;
  enabled: boolean;
  atom: AtomSpec;
}

export interface RuleItem {
  kind: "rule";
  id: number;
  enabled: boolean;
  conditions: AtomSpec[];
  conclusion: AtomSpec;
}

export type TheoryItem = FactItem | RuleItem;

// --- service wire format -------------------------------------------------

export interface ProofNode {
  literal: string;
  via: "given" | "rule";
  sentence: number;
  rule?: string;
  binding?: string | null;
  conditions?: ProofNode[];
  naf?: string[];
}

export interface ProveResponse {
  status: "consistent" | "inconsistent" | "unstratified";
  answer: boolean | null;
  depth: number | null;
  proofs: ProofNode[];
  critical_sentences: number[] | null;
  context_sentences: string[];
  model: {
    derived: { literal: string; depth: number }[];
    max_depth: number;
  };
}

export interface ProveError {
  error: string;
  span?: { start: number; end: number };
  violations?: { sentence: number; message: string }[];
}

export interface CorpusQuestion {
  statement: string;
  english: string;
  answer: boolean;
}

export interface CorpusCase {
  name: string;
  theory: string;
  english: string[];
  questions: CorpusQuestion[];
  has_scenario: boolean;
}

export interface CorpusDetail {
  name: string;
  cases: CorpusCase[];
}

export interface ServiceApi {
  prove(theory: string, statement: string): Promise<ProveResponse>;
  listCorpora(): Promise<string[]>;
  corpus(name: string): Promise<CorpusDetail>;
}
