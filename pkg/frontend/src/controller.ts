// Editor state and the prove loop.
//
// All displayed answers come from the service: edits only mark the state
// dirty and schedule a debounced re-prove; responses are applied
// last-write-wins through a monotonically increasing request sequence, so a
// slow older response can never overwrite a newer one.

import { emitAtom, emitTheory, parseTheory } from "./formal.js";
import {
  AtomSpec,
  CorpusCase,
  ProveError,
  ProveResponse,
  ServiceApi,
  TheoryItem,
} from "./types.js";

export interface EditorState {
  items: TheoryItem[];
  question: AtomSpec | null;
  /** service response for the current question, when fresh */
  result: ProveResponse | null;
  /** edits happened after the last applied response */
  dirty: boolean;
  /** in-flight request exists */
  proving: boolean;
  error: ProveError | null;
  presetName: string | null;
}

export type EditAction =
  | { type: "add"; item: TheoryItem }
  | { type: "remove"; id: number }
  | { type: "toggle"; id: number }
  | { type: "replace"; item: TheoryItem };

const DEBOUNCE_MS = 300;

export class PlaygroundController {
  state: EditorState = {
    items: [],
    question: null,
    result: null,
    dirty: false,
    proving: false,
    error: null,
    presetName: null,
  };

  private history: TheoryItem[][] = [];
  private nextId = 1000;
  private sequence = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private listeners: (() => void)[] = [];

  constructor(
    private api: ServiceApi,
    private debounceMs: number = DEBOUNCE_MS,
  ) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  freshId(): number {
    return this.nextId++;
  }

  theoryText(): string {
    return emitTheory(this.state.items);
  }

  /** Apply one structured edit; history records the prior item list. */
  edit(action: EditAction): void {
    this.history.push(this.state.items);
    switch (action.type) {
      case "add":
        this.state.items = [...this.state.items, action.item];
        break;
      case "remove":
        this.state.items = this.state.items.filter(
          (item) => item.id !== action.id,
        );
        break;
      case "toggle":
        this.state.items = this.state.items.map((item) =>
          item.id === action.id ? { ...item, enabled: !item.enabled } : item,
        );
        break;
      case "replace":
        this.state.items = this.state.items.map((item) =>
          item.id === action.item.id ? action.item : item,
        );
        break;
    }
    this.markDirty();
  }

  undo(): void {
    const previous = this.history.pop();
    if (previous) {
      this.state.items = previous;
      this.markDirty();
    }
  }

  canUndo(): boolean {
    return this.history.length > 0;
  }

  setQuestion(question: AtomSpec | null): void {
    this.state.question = question;
    this.markDirty();
  }

  loadPreset(name: string, corpusCase: CorpusCase): void {
    this.history = [];
    this.state.items = parseTheory(corpusCase.theory);
    this.state.presetName = `${name}/${corpusCase.name}`;
    this.nextId = this.state.items.length + 1000;
    this.state.result = null;
    this.state.error = null;
    this.markDirty();
  }

  /** Mark answers stale and schedule the debounced re-prove. */
  private markDirty(): void {
    this.state.dirty = true;
    this.state.error = null;
    this.notify();
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.proveNow();
    }, this.debounceMs);
  }

  /** Prove immediately (also used by the Ask button). */
  async proveNow(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (!this.state.question) {
      this.state.dirty = false;
      this.state.result = null;
      this.notify();
      return;
    }
    const ticket = ++this.sequence;
    this.state.proving = true;
    this.notify();
    let response: ProveResponse | null = null;
    let failure: ProveError | null = null;
    try {
      response = await this.api.prove(
        this.theoryText(),
        emitAtom(this.state.question),
      );
    } catch (err) {
      failure = normalizeError(err);
    }
    if (ticket !== this.sequence) {
      return; // a newer request exists; that one wins
    }
    this.state.proving = false;
    this.state.dirty = false;
    this.state.result = response;
    this.state.error = failure;
    this.notify();
  }
}

function normalizeError(err: unknown): ProveError {
  if (typeof err === "object" && err !== null && "error" in err) {
    return err as ProveError;
  }
  return { error: String(err) };
}
