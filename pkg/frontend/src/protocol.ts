// Wire protocol for live dialing sessions: one JSON document per websocket
// message. The server owns all entry logic; the client only renders what
// arrives here.

export interface Geometry {
    width: number;
    height: number;
    handedness: string;
}

export interface Region {
    id: string;
    center: [number, number];
}

export interface LayoutMessage {
    type: "layout";
    geometry: Geometry;
    mode: string;
    regions: Region[];
    keymap: Record<string, string>;
    anchors: Record<string, [number, number]>;
    parameters: { inset: number; margin: number; activation_radius: number };
}

export type FeedbackKind = "digit" | "pending" | "action" | "error" | "unassigned";

export interface FeedbackMessage {
    type: "feedback";
    kind: FeedbackKind;
    utterance: string;
    detail: string;
}

export interface PendingState {
    region: string;
    selected: number;
    press_count: number;
}

export interface StateMessage {
    type: "state";
    buffer: string;
    pending: PendingState | null;
    terminated: boolean;
}

export interface ServerErrorMessage {
    type: "error";
    error: string;
    detail?: string;
}

export type ServerMessage =
    | LayoutMessage
    | FeedbackMessage
    | StateMessage
    | ServerErrorMessage;

export interface TapMessage {
    type: "tap";
    x: number;
    y: number;
    t: number;
}

export class ProtocolError extends Error {}

const FEEDBACK_KINDS = new Set(["digit", "pending", "action", "error", "unassigned"]);

function isRecord(v: unknown): v is Record<string, unknown> {
    return typeof v === "object" && v !== null && !Array.isArray(v);
}

function isPoint(v: unknown): v is [number, number] {
    return (
        Array.isArray(v) &&
        v.length === 2 &&
        typeof v[0] === "number" &&
        typeof v[1] === "number"
    );
}

function fail(why: string): never {
    throw new ProtocolError(why);
}

function parseLayout(msg: Record<string, unknown>): LayoutMessage {
    const geometry = msg.geometry;
    if (
        !isRecord(geometry) ||
        typeof geometry.width !== "number" ||
        typeof geometry.height !== "number" ||
        typeof geometry.handedness !== "string"
    ) {
        fail("layout message with malformed geometry");
    }
    if (typeof msg.mode !== "string") fail("layout message without mode");
    if (!Array.isArray(msg.regions) || msg.regions.length !== 11) {
        fail("layout message must carry exactly 11 regions");
    }
    const regions: Region[] = msg.regions.map((r) => {
        if (!isRecord(r) || typeof r.id !== "string" || !isPoint(r.center)) {
            fail("layout message with malformed region");
        }
        return { id: r.id, center: [r.center[0], r.center[1]] };
    });
    if (!isRecord(msg.keymap)) fail("layout message without keymap");
    for (const v of Object.values(msg.keymap)) {
        if (typeof v !== "string") fail("layout keymap values must be strings");
    }
    if (!isRecord(msg.anchors)) fail("layout message without anchors");
    const anchors: Record<string, [number, number]> = {};
    for (const [k, v] of Object.entries(msg.anchors)) {
        if (!isPoint(v)) fail(`malformed anchor ${k}`);
        anchors[k] = [v[0], v[1]];
    }
    const params = msg.parameters;
    if (
        !isRecord(params) ||
        typeof params.inset !== "number" ||
        typeof params.margin !== "number" ||
        typeof params.activation_radius !== "number"
    ) {
        fail("layout message with malformed parameters");
    }
    return {
        type: "layout",
        geometry: { width: geometry.width, height: geometry.height, handedness: geometry.handedness },
        mode: msg.mode,
        regions,
        keymap: msg.keymap as Record<string, string>,
        anchors,
        parameters: {
            inset: params.inset,
            margin: params.margin,
            activation_radius: params.activation_radius,
        },
    };
}

export function parseServerMessage(raw: string): ServerMessage {
    let doc: unknown;
    try {
        doc = JSON.parse(raw);
    } catch {
        fail("message is not valid JSON");
    }
    if (!isRecord(doc) || typeof doc.type !== "string") {
        fail("message without a type field");
    }
    switch (doc.type) {
        case "layout":
            return parseLayout(doc);
        case "feedback": {
            if (
                typeof doc.kind !== "string" ||
                !FEEDBACK_KINDS.has(doc.kind) ||
                typeof doc.utterance !== "string" ||
                doc.utterance.length === 0 ||
                typeof doc.detail !== "string"
            ) {
                fail("malformed feedback message");
            }
            return {
                type: "feedback",
                kind: doc.kind as FeedbackKind,
                utterance: doc.utterance,
                detail: doc.detail,
            };
        }
        case "state": {
            if (typeof doc.buffer !== "string" || typeof doc.terminated !== "boolean") {
                fail("malformed state message");
            }
            let pending: PendingState | null = null;
            if (doc.pending !== null && doc.pending !== undefined) {
                const p = doc.pending;
                if (
                    !isRecord(p) ||
                    typeof p.region !== "string" ||
                    typeof p.selected !== "number" ||
                    typeof p.press_count !== "number"
                ) {
                    fail("malformed pending state");
                }
                pending = { region: p.region, selected: p.selected, press_count: p.press_count };
            }
            return { type: "state", buffer: doc.buffer, pending, terminated: doc.terminated };
        }
        case "error": {
            if (typeof doc.error !== "string") fail("malformed error message");
            return {
                type: "error",
                error: doc.error,
                detail: typeof doc.detail === "string" ? doc.detail : undefined,
            };
        }
        default:
            fail(`unknown message type ${doc.type}`);
    }
}

export function serializeTap(tap: TapMessage): string {
    // one line of JSON, no internal newlines
    return JSON.stringify(tap);
}
