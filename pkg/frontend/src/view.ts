// Pure view-model builders: everything the DOM layer displays is computed
// here from the editor state and the last service response, which keeps the
// display snapshot-testable without a browser.

import { sentenceIndexByItem } from "./formal.js";
import { EditorState } from "./controller.js";
import { ProofNode } from "./types.js";

export type Highlight = "critical" | "irrelevant" | "none";

export interface SentenceView {
  itemId: number;
  sentence: number | null; // null when the item is disabled
  english: string | null; // null until the service has rendered it
  enabled: boolean;
  highlight: Highlight;
}

export interface AnswerView {
  verdict: "TRUE" | "FALSE" | null;
  status: string;
  depth: number | null;
  dirty: boolean;
  proving: boolean;
  proofs: string[];
  criticalCount: number;
  error: string | null;
  violations: { sentence: number; message: string }[];
}

export function sentenceViews(state: EditorState): SentenceView[] {
  const indexByItem = sentenceIndexByItem(state.items);
  const english = state.result?.context_sentences ?? null;
  const critical = new Set(state.result?.critical_sentences ?? []);
  const haveAnswer =
    !state.dirty && state.result !== null && state.result.answer !== null;
  return state.items.map((item) => {
    const sentence = item.enabled ? indexByItem.get(item.id) ?? null : null;
    let highlight: Highlight = "none";
    if (haveAnswer && sentence !== null && state.result?.critical_sentences) {
      highlight = critical.has(sentence) ? "critical" : "irrelevant";
    }
    return {
      itemId: item.id,
      sentence,
      english:
        !state.dirty && english && sentence !== null
          ? english[sentence] ?? null
          : null,
      enabled: item.enabled,
      highlight,
    };
  });
}

function proofLine(node: ProofNode, depth = 0): string[] {
  const pad = "  ".repeat(depth);
  if (node.via === "given") {
    return [`${pad}${node.literal} (given, sentence ${node.sentence})`];
  }
  const out = [
    `${pad}${node.literal} (${node.rule ?? "rule"}, sentence ${node.sentence})`,
  ];
  for (const child of node.conditions ?? []) {
    out.push(...proofLine(child, depth + 1));
  }
  for (const blocked of node.naf ?? []) {
    out.push(`${"  ".repeat(depth + 1)}not provable: ${blocked}`);
  }
  return out;
}

export function answerView(state: EditorState): AnswerView {
  const result = state.result;
  const verdict =
    !state.dirty && result && result.answer !== null
      ? result.answer
        ? "TRUE"
        : "FALSE"
      : null;
  let status = "ready";
  if (state.error) status = "error";
  else if (state.proving) status = "proving";
  else if (state.dirty) status = "stale";
  else if (result && result.status !== "consistent") status = result.status;
  else if (!state.question) status = "no question";
  return {
    verdict,
    status,
    depth: !state.dirty && result ? result.depth : null,
    dirty: state.dirty,
    proving: state.proving,
    proofs: result && !state.dirty ? result.proofs.flatMap((p) => proofLine(p)) : [],
    criticalCount:
      !state.dirty && result?.critical_sentences
        ? result.critical_sentences.length
        : 0,
    error: state.error?.error ?? null,
    violations: state.error?.violations ?? [],
  };
}
