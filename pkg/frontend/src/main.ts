// Page wiring: connect a session, render the surface, voice the feedback,
// and drive trials. Everything spoken comes verbatim from the server's
// feedback events; everything displayed comes from its state messages.

import { DialSession, WebSocketLike } from "./session.js";
import { SpeechQueue, browserSpeaker } from "./speech.js";
import { Surface } from "./surface.js";
import { TrialRunner, httpUploader } from "./trials.js";

const $ = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
};

const statusEl = $("status");
const bufferEl = $("buffer");
const surfaceEl = $("surface");
const modeEl = $<HTMLSelectElement>("mode");
const numberEl = $<HTMLInputElement>("number");
const connectBtn = $<HTMLButtonElement>("connect");
const trialBtn = $<HTMLButtonElement>("trial");
const debugBtn = $<HTMLButtonElement>("debug");

const speech = new SpeechQueue(browserSpeaker());
const runner = new TrialRunner(speech, httpUploader(), (score) => {
    statusEl.textContent =
        `last trial: "${score.transcribed}" at ${score.wpm.toFixed(2)} wpm, ` +
        `${score.error_count} errors, ${score.correction_count} corrections` +
        (score.complete ? "" : " (incomplete)");
});

let session: DialSession | null = null;

const surface = new Surface(surfaceEl, (x, y) => {
    if (!session) return;
    const tap = session.sendTap(x, y);
    runner.recordTap(tap);
});

function connect(): void {
    session?.close();
    const mode = modeEl.value;
    const scheme = location.protocol === "https:" ? "wss" : "ws";
    const socket = new WebSocket(`${scheme}://${location.host}/ws?mode=${mode}`);
    statusEl.textContent = "connecting...";
    session = new DialSession(socket as unknown as WebSocketLike, {
        onLayout(layout) {
            surface.setLayout(layout);
            statusEl.textContent = `connected, ${layout.mode} technique`;
            speech.enqueue(`${layout.mode} digit ready`);
        },
        onFeedback(msg) {
            speech.enqueue(msg.utterance);
        },
        onState(state) {
            bufferEl.textContent = state.buffer + (state.pending ? ` (${state.pending.selected}?)` : "");
            runner.handleState(state);
        },
        onServerError(msg) {
            statusEl.textContent = `server: ${msg.error}`;
        },
        onProtocolError(err) {
            statusEl.textContent = `protocol error: ${err.message}`;
        },
        onDisconnect() {
            statusEl.textContent = "connection lost";
            document.body.classList.add("disconnected");
            speech.enqueue("connection lost");
        },
    });
    socket.onopen = () => document.body.classList.remove("disconnected");
}

connectBtn.addEventListener("click", connect);
modeEl.addEventListener("change", connect);

trialBtn.addEventListener("click", () => {
    if (!session?.layout) {
        statusEl.textContent = "connect first";
        return;
    }
    if (session.state?.terminated) {
        connect(); // each trial gets a fresh engine session
        const waitForLayout = setInterval(() => {
            if (session?.layout && !session.state?.terminated) {
                clearInterval(waitForLayout);
                runner.start(numberEl.value, session.layout.mode);
            }
        }, 50);
        return;
    }
    runner.start(numberEl.value, session.layout.mode);
});

debugBtn.addEventListener("click", () => {
    const visible = surface.toggleDebug();
    debugBtn.textContent = visible ? "hide regions" : "show regions";
    bufferEl.classList.toggle("visible", visible);
});

connect();
