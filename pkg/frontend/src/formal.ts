// Reading and writing the parenthesized theory text. This is pure format
// handling; every semantic judgment (answers, depths, critical sentences)
// comes from the service.

import {
  AtomSpec,
  FactItem,
  RuleItem,
  TheoryItem,
  VARIABLE_SYNONYMS,
} from "./types.js";

export function isVariable(symbol: string): boolean {
  return (VARIABLE_SYNONYMS as string[]).includes(symbol);
}

function quote(symbol: string): string {
  return `"${symbol}"`;
}

export function emitAtom(atom: AtomSpec): string {
  const polarity = atom.positive ? "+" : "-";
  return `(${quote(atom.subject)} ${quote(atom.predicate)} ${quote(
    atom.object,
  )} ${quote(polarity)})`;
}

export function emitRule(item: RuleItem): string {
  const conditions = item.conditions.map(emitAtom).join(" ");
  return `((${conditions}) -> ${emitAtom(item.conclusion)})`;
}

/** The theory text for the enabled items, facts first then rules, so the
 * service's sentence indices line up with the visible sentence order. */
export function emitTheory(items: TheoryItem[]): string {
  const facts = items.filter(
    (item): item is FactItem => item.kind === "fact" && item.enabled,
  );
  const rules = items.filter(
    (item): item is RuleItem => item.kind === "rule" && item.enabled,
  );
  const lines = [
    ...facts.map((fact) => emitAtom(fact.atom)),
    ...rules.map(emitRule),
  ];
  return lines.length ? lines.join("\n") + "\n" : "";
}

/** Sentence index of each enabled item, mirroring emitTheory's ordering. */
export function sentenceIndexByItem(items: TheoryItem[]): Map<number, number> {
  const out = new Map<number, number>();
  let next = 0;
  for (const item of items) {
    if (item.kind === "fact" && item.enabled) {
      out.set(item.id, next++);
    }
  }
  for (const item of items) {
    if (item.kind === "rule" && item.enabled) {
      out.set(item.id, next++);
    }
  }
  return out;
}

// --- parsing (for loading presets sent as theory text) --------------------

type Token =
  | { kind: "(" }
  | { kind: ")" }
  | { kind: "->" }
  | { kind: "string"; value: string };

function tokenize(text: string): Token[] {
  const out: Token[] = [];
  let i = 0;
  while (i < text.length) {
    const c = text[i];
    if (/\s/.test(c)) {
      i += 1;
    } else if (text.startsWith("//", i)) {
      const end = text.indexOf("\n", i);
      i = end < 0 ? text.length : end + 1;
    } else if (c === "(" || c === ")") {
      out.push({ kind: c });
      i += 1;
    } else if (text.startsWith("->", i)) {
      out.push({ kind: "->" });
      i += 2;
    } else if (c === '"') {
      const end = text.indexOf('"', i + 1);
      if (end < 0) throw new Error("unterminated string");
      out.push({ kind: "string", value: text.slice(i + 1, end) });
      i = end + 1;
    } else {
      throw new Error(`unexpected character ${c}`);
    }
  }
  return out;
}

class Reader {
  private position = 0;
  constructor(private tokens: Token[]) {}

  done(): boolean {
    return this.position >= this.tokens.length;
  }

  peek(): Token | undefined {
    return this.tokens[this.position];
  }

  next(): Token {
    const token = this.tokens[this.position];
    if (!token) throw new Error("unexpected end of theory text");
    this.position += 1;
    return token;
  }

  expect(kind: Token["kind"]): Token {
    const token = this.next();
    if (token.kind !== kind) {
      throw new Error(`expected ${kind}, found ${token.kind}`);
    }
    return token;
  }

  atomBody(): AtomSpec {
    const parts: string[] = [];
    while (this.peek()?.kind === "string") {
      parts.push((this.next() as { kind: "string"; value: string }).value);
    }
    this.expect(")");
    if (parts.length !== 4) {
      throw new Error(`facts take 4 tokens, found ${parts.length}`);
    }
    const [subject, predicate, object, polarity] = parts;
    if (polarity !== "+" && polarity !== "-") {
      throw new Error(`bad polarity ${polarity}`);
    }
    return {
      subject: subject.toLowerCase(),
      predicate: predicate.toLowerCase(),
      object: object.toLowerCase(),
      positive: polarity === "+",
    };
  }

  atom(): AtomSpec {
    this.expect("(");
    return this.atomBody();
  }
}

/** Parse theory text into editor items (ids assigned sequentially). */
export function parseTheory(text: string): TheoryItem[] {
  const reader = new Reader(tokenize(text));
  const facts: FactItem[] = [];
  const rules: RuleItem[] = [];
  let id = 0;
  while (!reader.done()) {
    reader.expect("(");
    if (reader.peek()?.kind === "string") {
      facts.push({ kind: "fact", id: id++, enabled: true, atom: reader.atomBody() });
      continue;
    }
    reader.expect("(");
    const conditions: AtomSpec[] = [reader.atom()];
    while (reader.peek()?.kind === "(") {
      conditions.push(reader.atom());
    }
    reader.expect(")");
    reader.expect("->");
    const conclusion = reader.atom();
    reader.expect(")");
    rules.push({ kind: "rule", id: id++, enabled: true, conditions, conclusion });
  }
  return [...facts, ...rules];
}

/** The symbols in use, for the structured pickers. */
export function vocabulary(items: TheoryItem[]): {
  entities: string[];
  attributes: string[];
  relations: string[];
} {
  const entities = new Set<string>();
  const attributes = new Set<string>();
  const relations = new Set<string>();
  const see = (atom: AtomSpec) => {
    if (!isVariable(atom.subject)) entities.add(atom.subject);
    if (atom.predicate === "is") {
      attributes.add(atom.object);
    } else {
      relations.add(atom.predicate);
      entities.add(atom.object);
    }
  };
  for (const item of items) {
    if (item.kind === "fact") {
      see(item.atom);
    } else {
      item.conditions.forEach(see);
      see(item.conclusion);
    }
  }
  return {
    entities: [...entities].sort(),
    attributes: [...attributes].sort(),
    relations: [...relations].sort(),
  };
}
